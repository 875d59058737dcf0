#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "ferrowrite/errors.hpp"
#include "ferrowrite/rotations.hpp"
#include "ferrowrite/sweep.hpp"

namespace ferrowrite {

namespace certification {
// A written state is accepted when its dephased deviation part sits
// within this trace distance of the thermal target.
inline constexpr double distance_tol = 1e-3;
// Ladder populations satisfy the product condition exactly; anything
// beyond this is not a dephased two-qubit product state at all.
inline constexpr double product_tol = 1e-9;
}  // namespace certification

struct AngleMapEntry {
  double temperature = 0.0;
  double applied_b = 0.0;
  double m = 0.0;  // reduced magnetization the entry encodes
  PulseAngles angles;
  double achieved_distance = 0.0;
};

// Thermal state the write sequence must reproduce at (T, B0).  Solves
// the mean-field problem from `branch_seed` and hands its effective
// field to the Boltzmann construction.  Four levels require S = 3/2.
inline DensityMatrix target_state(const MaterialModel& model,
                                  double temperature, double applied_b,
                                  double branch_seed) {
  if (model.spin != 1.5)
    throw std::invalid_argument("target_state: four levels require S = 3/2");
  const SelfConsistentResult sc =
      solve_self_consistent(model, temperature, applied_b, branch_seed);
  if (!sc.converged)
    throw SolverError("target_state: mean-field solve did not converge",
                      temperature);
  return thermal_density_matrix(model, sc.b_effective, temperature);
}

// Inverts the dephased-population map in closed form.  A Boltzmann
// ladder factorizes over the two qubits with marginals
// k_a = p0 + p1 - (p2 + p3) and k_b = p0 + p2 - (p1 + p3); placing the
// whole rotation on the x pulses gives theta_x = acos(k), theta_y = 0,
// the canonical representative of the (theta_x, theta_y) families that
// produce the same populations.
inline PulseAngles invert_populations(const std::array<double, 4>& p) {
  double sum = 0.0;
  for (const double w : p) {
    if (!std::isfinite(w) || w < -1e-12)
      throw std::invalid_argument(
          "invert_populations: populations must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("invert_populations: populations must sum to 1");
  if (std::abs(p[0] * p[3] - p[1] * p[2]) > certification::product_tol) {
    std::ostringstream msg;
    msg << "invert_populations: product condition violated, |p00 p11 - "
           "p01 p10| = "
        << std::abs(p[0] * p[3] - p[1] * p[2]);
    throw RepresentationError(msg.str());
  }

  const double ka = std::clamp(p[0] + p[1] - p[2] - p[3], -1.0, 1.0);
  const double kb = std::clamp(p[0] + p[2] - p[1] - p[3], -1.0, 1.0);
  PulseAngles out;
  out.theta_x_a = std::acos(ka);
  out.theta_x_b = std::acos(kb);
  return out;
}

// Trace distance between the dephased written deviation state and the
// target, simulated through the actual matrix pipeline (not the
// closed-form populations), so certification exercises what the
// hardware sequence would do.
inline double written_state_distance(const PulseAngles& angles,
                                     const DensityMatrix& target) {
  const Mat4 u = composite_rotation(angles);
  const Mat4 rotated = u * basis_projector(0).matrix() * u.adjoint();
  return trace_distance(zero_coherences(DensityMatrix(rotated)), target);
}

// Deterministic coordinate-descent fallback for targets the closed
// form cannot certify.  Scans the four angles in a fixed order with a
// shrinking step, clamped to [0, pi]; terminates once the distance
// clears the certification threshold or the step underflows 1e-8.
// Failure throws, carrying the best distance reached.
inline PulseAngles refine_numeric(const PulseAngles& initial,
                                  const DensityMatrix& target) {
  PulseAngles best = initial;
  double best_d = written_state_distance(best, target);

  double step = 0.25;
  while (best_d >= certification::distance_tol && step >= 1e-8) {
    bool improved = false;
    for (int slot = 0; slot < 4; ++slot) {
      double* angle = slot == 0   ? &best.theta_x_a
                      : slot == 1 ? &best.theta_y_a
                      : slot == 2 ? &best.theta_x_b
                                  : &best.theta_y_b;
      for (const double delta : {step, -step}) {
        const double saved = *angle;
        *angle = std::clamp(saved + delta, 0.0, std::numbers::pi);
        const double d = written_state_distance(best, target);
        if (d < best_d) {
          best_d = d;
          improved = true;
        } else {
          *angle = saved;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  if (best_d >= certification::distance_tol) {
    std::ostringstream msg;
    msg << "refine_numeric: stuck at trace distance " << best_d;
    throw CertificationError(msg.str(), 0.0, best_d);
  }
  return best;
}

// Certified pulse angles for one thermal target: closed-form inversion
// first, numeric refinement only if its certification misses.
inline std::pair<PulseAngles, double> certified_angles(
    const DensityMatrix& target, double temperature) {
  PulseAngles angles = invert_populations(target.populations());
  double d = written_state_distance(angles, target);
  if (d >= certification::distance_tol) {
    try {
      angles = refine_numeric(angles, target);
    } catch (const CertificationError& err) {
      std::ostringstream msg;
      msg << "angle certification failed at T = " << temperature
          << " K, best trace distance " << err.best_distance();
      throw CertificationError(msg.str(), temperature, err.best_distance());
    }
    d = written_state_distance(angles, target);
  }
  return {angles, d};
}

// Angle table over a branch-continued temperature sweep.  Heating runs
// start saturated (seed 1), cooling runs start disordered (seed 0, the
// sweep's own zero-field floor keeps the ordered root reachable).
// Every entry is certified; an uncertifiable point aborts the build.
inline std::vector<AngleMapEntry> build_angle_table(
    const MaterialModel& model, std::span<const double> grid_ascending,
    double applied_b, SweepDirection direction) {
  if (model.spin != 1.5)
    throw std::invalid_argument(
        "build_angle_table: four levels require S = 3/2");

  const double seed = direction == SweepDirection::up ? 1.0 : 0.0;
  const SweepResult sweep =
      sweep_temperature(model, grid_ascending, applied_b, direction, seed);

  std::vector<AngleMapEntry> out;
  out.reserve(sweep.points.size());
  for (const SweepPoint& pt : sweep.points) {
    const DensityMatrix target =
        thermal_density_matrix(model, pt.result.b_effective, pt.temperature);
    const auto [angles, d] = certified_angles(target, pt.temperature);
    out.push_back({pt.temperature, applied_b, pt.result.m, angles, d});
  }
  return out;
}

}  // namespace ferrowrite
