#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "ferrowrite/density_matrix.hpp"

namespace ferrowrite {

enum class Axis { x, y };
enum class Qubit { a, b };

// One pulse sequence: independent x and y rotations on each qubit.
// Angles are radians; the canonical range emitted by the inversion is
// [0, pi], but the simulation accepts any real angle.
struct PulseAngles {
  double theta_x_a = 0.0;
  double theta_y_a = 0.0;
  double theta_x_b = 0.0;
  double theta_y_b = 0.0;
};

// Single-qubit rotation exp(-i theta sigma/2) embedded in the
// two-qubit space.  Qubit a is the high bit of the basis index.
inline Mat4 rotation_operator(Axis axis, Qubit qubit, double theta) {
  if (!std::isfinite(theta))
    throw std::invalid_argument("rotation_operator: theta must be finite");

  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  // u = [[c, u01], [u10, c]] with the axis fixing the off-diagonals.
  const complexd u01 =
      axis == Axis::x ? complexd(0.0, -s) : complexd(-s, 0.0);
  const complexd u10 =
      axis == Axis::x ? complexd(0.0, -s) : complexd(s, 0.0);

  Mat4 out;
  if (qubit == Qubit::a) {
    // u tensor I
    for (int b = 0; b < 2; ++b) {
      out(0 + b, 0 + b) = c;
      out(0 + b, 2 + b) = u01;
      out(2 + b, 0 + b) = u10;
      out(2 + b, 2 + b) = c;
    }
  } else {
    // I tensor u
    for (int a = 0; a < 2; ++a) {
      out(2 * a + 0, 2 * a + 0) = c;
      out(2 * a + 0, 2 * a + 1) = u01;
      out(2 * a + 1, 2 * a + 0) = u10;
      out(2 * a + 1, 2 * a + 1) = c;
    }
  }
  return out;
}

// Full write sequence U = Rx_a Rx_b Ry_a Ry_b.  All four factors live
// on commuting single-qubit slots except the x/y pair on the same
// qubit, whose order is part of the convention and fixed here.
inline Mat4 composite_rotation(const PulseAngles& angles) {
  return rotation_operator(Axis::x, Qubit::a, angles.theta_x_a) *
         rotation_operator(Axis::x, Qubit::b, angles.theta_x_b) *
         rotation_operator(Axis::y, Qubit::a, angles.theta_y_a) *
         rotation_operator(Axis::y, Qubit::b, angles.theta_y_b);
}

// Populations of U |00><00| U^dag after dephasing, in closed form.
// With k = cos(theta_x) cos(theta_y) per qubit, the diagonal factors
// as (1 +- k_a)(1 +- k_b)/4.  Invariant under theta -> -theta and
// under swapping a qubit's x and y angles.
inline std::array<double, 4> populations_from_angles(
    const PulseAngles& angles) {
  const double ka = std::cos(angles.theta_x_a) * std::cos(angles.theta_y_a);
  const double kb = std::cos(angles.theta_x_b) * std::cos(angles.theta_y_b);
  return {0.25 * (1.0 + ka) * (1.0 + kb), 0.25 * (1.0 + ka) * (1.0 - kb),
          0.25 * (1.0 - ka) * (1.0 + kb), 0.25 * (1.0 - ka) * (1.0 - kb)};
}

// Pseudo-pure state (1 - eps)/4 I + eps rho1.  Only the deviation part
// rho1 is transformed or read out; the identity background is inert
// under unitaries, so eps never enters a readout.
class PseudoPureState {
 public:
  PseudoPureState(double epsilon, DensityMatrix rho1)
      : epsilon_(epsilon), rho1_(std::move(rho1)) {
    if (!std::isfinite(epsilon) || epsilon <= 0.0 || epsilon > 1.0)
      throw std::invalid_argument(
          "PseudoPureState: epsilon must lie in (0, 1]");
  }

  double epsilon() const { return epsilon_; }
  const DensityMatrix& deviation() const { return rho1_; }

  // The laboratory state.  Valid by construction: a convex mix of the
  // maximally mixed state and a valid rho1.
  DensityMatrix full_state() const {
    const Mat4 full = (complexd((1.0 - epsilon_) * 0.25) * Mat4::identity()) +
                      (complexd(epsilon_) * rho1_.matrix());
    return DensityMatrix(full);
  }

 private:
  double epsilon_;
  DensityMatrix rho1_;
};

// Conjugates the deviation part by the composite pulse unitary.
// Unitarity preserves the eigenvalue multiset of rho1, hence validity.
inline PseudoPureState apply_rotations(const PseudoPureState& state,
                                       const PulseAngles& angles) {
  const Mat4 u = composite_rotation(angles);
  const Mat4 rotated = u * state.deviation().matrix() * u.adjoint();
  return PseudoPureState(state.epsilon(), DensityMatrix(rotated));
}

}  // namespace ferrowrite
