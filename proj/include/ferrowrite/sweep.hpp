#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "ferrowrite/errors.hpp"
#include "ferrowrite/self_consistency.hpp"

namespace ferrowrite {

enum class SweepDirection { up, down };

// Provenance of each point's starting guess: continued from the
// previous converged m, or reseeded (first point, or the zero-field
// cooling floor that keeps the ordered branch reachable).
enum class BranchTag { continued, reseeded };

namespace sweeps {
// |delta m| between adjacent points that is recorded as a transition.
inline constexpr double jump_threshold = 0.1;
// Zero-field cooling floor: a cooling solve is never seeded below this,
// otherwise the paramagnetic m = 0 root would absorb the whole sweep.
inline constexpr double cooling_seed_floor = 1e-3;
}  // namespace sweeps

struct SweepPoint {
  double temperature = 0.0;
  SelfConsistentResult result;
  BranchTag tag = BranchTag::continued;
};

struct Transition {
  double temperature = 0.0;  // arrival point of the jump
  double delta_m = 0.0;      // signed m change across it
};

struct SweepResult {
  SweepDirection direction = SweepDirection::up;
  std::vector<SweepPoint> points;          // in traversal order
  std::vector<Transition> transitions;
};

inline const char* to_string(SweepDirection d) {
  return d == SweepDirection::up ? "up" : "down";
}

// Continuation sweep over a temperature grid.  The grid is supplied in
// ascending order and traversed according to `direction`; each solve is
// warm-started from the previous point's solution, so the sweep tracks
// one metastable branch until it disappears.  Jumps larger than the
// threshold are recorded as transitions.  A non-convergent point aborts
// the whole sweep: a silent hole would corrupt branch continuation.
inline SweepResult sweep_temperature(const MaterialModel& model,
                                     std::span<const double> grid_ascending,
                                     double applied_b, SweepDirection direction,
                                     double seed) {
  validate_material(model);
  if (grid_ascending.empty())
    throw std::invalid_argument("sweep_temperature: empty temperature grid");
  for (std::size_t i = 0; i < grid_ascending.size(); ++i) {
    const double t = grid_ascending[i];
    if (!std::isfinite(t) || t < 0.0)
      throw std::invalid_argument(
          "sweep_temperature: temperatures must be finite and >= 0");
    if (i > 0 && t <= grid_ascending[i - 1])
      throw std::invalid_argument(
          "sweep_temperature: grid must be strictly ascending");
  }
  if (!std::isfinite(seed) || std::abs(seed) > 1.0)
    throw std::invalid_argument("sweep_temperature: seed must lie in [-1, 1]");

  const bool cooling = direction == SweepDirection::down;
  const bool apply_floor = cooling && applied_b == 0.0;

  SweepResult out;
  out.direction = direction;
  out.points.reserve(grid_ascending.size());

  double carry = seed;
  bool have_prev = false;
  double prev_m = 0.0;

  for (std::size_t step = 0; step < grid_ascending.size(); ++step) {
    const std::size_t i =
        cooling ? grid_ascending.size() - 1 - step : step;
    const double t = grid_ascending[i];

    double start = carry;
    BranchTag tag = have_prev ? BranchTag::continued : BranchTag::reseeded;
    if (apply_floor && start < sweeps::cooling_seed_floor) {
      start = sweeps::cooling_seed_floor;
      tag = BranchTag::reseeded;
    }

    const SelfConsistentResult res =
        solve_self_consistent(model, t, applied_b, start);
    if (!res.converged) {
      std::ostringstream msg;
      msg << "sweep_temperature: no convergence at T = " << t
          << " K (direction " << to_string(direction)
          << ", residual " << res.residual << ")";
      throw SolverError(msg.str(), t);
    }

    if (have_prev) {
      const double dm = res.m - prev_m;
      if (std::abs(dm) > sweeps::jump_threshold)
        out.transitions.push_back({t, dm});
    }

    out.points.push_back({t, res, tag});
    carry = res.m;
    prev_m = res.m;
    have_prev = true;
  }

  return out;
}

// Smallest applied field in `field_grid` that removes the first-order
// character over the temperature grid: both sweep directions must be
// transition-free and must agree pointwise within `coincidence_tol`.
// The pointwise check matters because a supercritical crossover can
// still hide distinct metastable-branch remnants between grid jumps.
// Fields are tried in the given order; the grid must be ascending so
// "first hit" means "smallest".
inline double find_critical_field(const MaterialModel& model,
                                  std::span<const double> grid_ascending,
                                  std::span<const double> field_grid,
                                  double coincidence_tol = 1e-8) {
  if (field_grid.empty())
    throw std::invalid_argument("find_critical_field: empty field grid");
  for (std::size_t i = 0; i < field_grid.size(); ++i) {
    if (!std::isfinite(field_grid[i]) || field_grid[i] < 0.0)
      throw std::invalid_argument(
          "find_critical_field: fields must be finite and >= 0");
    if (i > 0 && field_grid[i] <= field_grid[i - 1])
      throw std::invalid_argument(
          "find_critical_field: field grid must be strictly ascending");
  }

  for (const double b : field_grid) {
    const SweepResult heating =
        sweep_temperature(model, grid_ascending, b, SweepDirection::up, 1.0);
    const SweepResult cooling =
        sweep_temperature(model, grid_ascending, b, SweepDirection::down, 0.0);
    if (!heating.transitions.empty() || !cooling.transitions.empty()) continue;

    double gap = 0.0;
    const std::size_t n = heating.points.size();
    for (std::size_t i = 0; i < n; ++i) {
      const double up_m = heating.points[i].result.m;
      const double down_m = cooling.points[n - 1 - i].result.m;
      gap = std::max(gap, std::abs(up_m - down_m));
    }
    if (gap <= coincidence_tol) return b;
  }

  std::ostringstream msg;
  msg << "find_critical_field: no field up to " << field_grid.back()
      << " T closes the hysteresis loop on this grid";
  throw BracketError(msg.str());
}

}  // namespace ferrowrite
