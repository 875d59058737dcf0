#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ferrowrite/rotations.hpp"
#include "support/oracles.hpp"

using namespace ferrowrite;

namespace {
bool matrices_close(const Mat4& x, const Mat4& y, double tol) {
  for (int i = 0; i < 16; ++i)
    if (std::abs(x.a[i] - y.a[i]) > tol) return false;
  return true;
}
}  // namespace

TEST_CASE("rotation operators are unitary") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> uni(-10.0, 10.0);
  const Mat4 eye = Mat4::identity();
  for (int trial = 0; trial < 500; ++trial) {
    const double theta = uni(rng);
    const Axis axis = trial % 2 == 0 ? Axis::x : Axis::y;
    const Qubit qubit = trial % 4 < 2 ? Qubit::a : Qubit::b;
    const Mat4 u = rotation_operator(axis, qubit, theta);
    CHECK(matrices_close(u * u.adjoint(), eye, 1e-14));
    CHECK(matrices_close(u.adjoint() * u, eye, 1e-14));
  }
}

TEST_CASE("composite rotation is unitary for random angle sets") {
  std::mt19937 rng(777);
  const Mat4 eye = Mat4::identity();
  for (int trial = 0; trial < 500; ++trial) {
    const PulseAngles angles = oracles::random_angles(rng);
    const Mat4 u = composite_rotation(angles);
    CHECK(matrices_close(u * u.adjoint(), eye, 1e-13));
  }
}

TEST_CASE("special angles") {
  // theta = 0 is the identity; theta = 2 pi is -identity per qubit
  // (spin-1/2 double cover), which cancels in any conjugation.
  const Mat4 eye = Mat4::identity();
  CHECK(matrices_close(rotation_operator(Axis::x, Qubit::a, 0.0), eye, 0.0));
  const Mat4 full_turn =
      rotation_operator(Axis::y, Qubit::b, 2.0 * std::numbers::pi);
  CHECK(matrices_close(full_turn, complexd(-1.0) * eye, 1e-15));

  // A pi pulse on qubit a maps |00> to |10> (population-wise).
  const Mat4 u = rotation_operator(Axis::x, Qubit::a, std::numbers::pi);
  const Mat4 flipped = u * basis_projector(0).matrix() * u.adjoint();
  CHECK(std::abs(flipped(2, 2).real() - 1.0) < 1e-15);
}

TEST_CASE("closed-form populations match the matrix simulation") {
  std::mt19937 rng(1234);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const PulseAngles angles = oracles::random_angles(rng);
    const Mat4 u = composite_rotation(angles);
    const Mat4 rotated = u * basis_projector(0).matrix() * u.adjoint();
    const auto closed = populations_from_angles(angles);
    for (int k = 0; k < 4; ++k)
      worst = std::max(worst,
                       std::abs(rotated(k, k).real() - closed[k]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("population symmetries") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const PulseAngles angles = oracles::random_angles(rng);
    const auto base = populations_from_angles(angles);

    // Global sign flip of every angle.
    const PulseAngles flipped{-angles.theta_x_a, -angles.theta_y_a,
                              -angles.theta_x_b, -angles.theta_y_b};
    const auto flipped_p = populations_from_angles(flipped);

    // Swap x and y within each qubit.
    const PulseAngles swapped{angles.theta_y_a, angles.theta_x_a,
                              angles.theta_y_b, angles.theta_x_b};
    const auto swapped_p = populations_from_angles(swapped);

    for (int k = 0; k < 4; ++k) {
      CHECK(flipped_p[k] == Catch::Approx(base[k]).margin(1e-15));
      CHECK(swapped_p[k] == Catch::Approx(base[k]).margin(1e-15));
    }
  }
}

TEST_CASE("pseudo-pure state: construction and readout independence") {
  const DensityMatrix rho1 = basis_projector(0);
  const PseudoPureState weak(1e-5, rho1);
  const PseudoPureState strong(0.5, rho1);

  // Full state is a valid density matrix with interpolated populations.
  const auto full = weak.full_state();
  CHECK(full.populations()[0] ==
        Catch::Approx(0.25 * (1.0 - 1e-5) + 1e-5).epsilon(1e-12));

  // Deviation-part readout does not depend on epsilon.
  const PulseAngles angles{0.7, 0.2, 1.1, 0.4};
  const auto rotated_weak = apply_rotations(weak, angles);
  const auto rotated_strong = apply_rotations(strong, angles);
  for (int k = 0; k < 4; ++k)
    CHECK(rotated_weak.deviation().populations()[k] ==
          Catch::Approx(rotated_strong.deviation().populations()[k])
              .margin(1e-15));

  CHECK_THROWS_AS(PseudoPureState(0.0, rho1), std::invalid_argument);
  CHECK_THROWS_AS(PseudoPureState(1.5, rho1), std::invalid_argument);
  CHECK_THROWS_AS(PseudoPureState(-0.1, rho1), std::invalid_argument);
}

TEST_CASE("apply_rotations preserves the eigenvalue multiset") {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = oracles::random_density(rng);
    const PulseAngles angles = oracles::random_angles(rng);
    const PseudoPureState state(1e-5, rho);
    const auto rotated = apply_rotations(state, angles);

    const auto before = eigen_hermitian(rho.matrix()).values;
    const auto after = eigen_hermitian(rotated.deviation().matrix()).values;
    for (int k = 0; k < 4; ++k)
      CHECK(after[k] == Catch::Approx(before[k]).margin(1e-10));
  }
}
