#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ferrowrite/angle_map.hpp"
#include "ferrowrite/free_energy.hpp"

namespace ferrowrite {

enum class Branch { up, down, single };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::up: return "up";
    case Branch::down: return "down";
    default: return "single";
  }
}

// One fully processed experiment record: mean-field solution, certified
// write angles, and the simulated readout of the written state.
struct CurvePoint {
  double temperature = 0.0;     // K
  double t_reduced = 0.0;       // T / T_c
  Branch branch = Branch::single;
  double m = 0.0;               // reduced mean-field magnetization
  double magnetization = 0.0;   // per-ion moment, J/T
  double b_effective = 0.0;     // tesla
  double nmr_magnetization = 0.0;  // readout of the written state, J/T
  double discrepancy = 0.0;     // |M - M_nmr| / (g mu_B S)
  PulseAngles angles;
  double trace_dist = 0.0;      // certified D of the written state
};

struct SecondOrderRun {
  double applied_b = 0.0;
  std::vector<CurvePoint> points;  // ascending T, branch = single
  double branch_gap = 0.0;         // max |m_up - m_down| over the grid
};

struct FirstOrderRun {
  double applied_b = 0.0;
  std::vector<CurvePoint> heating;  // ascending T
  std::vector<CurvePoint> cooling;  // descending T
  std::vector<Transition> heating_transitions;
  std::vector<Transition> cooling_transitions;
  double max_branch_gap = 0.0;  // max |m_up - m_down|, the hysteresis width
};

namespace detail {

// Write-then-read simulation for one solved mean-field point: certify
// pulse angles against the thermal target, drive the pseudo-pure state
// through them, dephase, and read the longitudinal moment back.
inline CurvePoint write_and_read(const MaterialModel& model, double t_c,
                                 Branch branch, const SweepPoint& pt,
                                 double epsilon) {
  const DensityMatrix target =
      thermal_density_matrix(model, pt.result.b_effective, pt.temperature);
  const auto [angles, dist] = certified_angles(target, pt.temperature);

  const PseudoPureState prepared(epsilon, basis_projector(0));
  const PseudoPureState written = apply_rotations(prepared, angles);
  const DensityMatrix observed = zero_coherences(written.deviation());
  const double nmr = magnetization_readout(observed, model);

  CurvePoint out;
  out.temperature = pt.temperature;
  out.t_reduced = pt.temperature / t_c;
  out.branch = branch;
  out.m = pt.result.m;
  out.magnetization = pt.result.magnetization;
  out.b_effective = pt.result.b_effective;
  out.nmr_magnetization = nmr;
  out.discrepancy =
      std::abs(pt.result.magnetization - nmr) / saturation_moment(model);
  out.angles = angles;
  out.trace_dist = dist;
  return out;
}

inline std::vector<CurvePoint> process_sweep(const MaterialModel& model,
                                             double t_c, Branch branch,
                                             const SweepResult& sweep,
                                             double epsilon) {
  std::vector<CurvePoint> out;
  out.reserve(sweep.points.size());
  for (const SweepPoint& pt : sweep.points)
    out.push_back(write_and_read(model, t_c, branch, pt, epsilon));
  return out;
}

}  // namespace detail

// Continuous-transition experiment (lambda' = 0).  Both sweep
// directions are run so the absence of hysteresis is measured, not
// assumed; the reported curve is the heating sweep labeled `single`,
// and branch_gap records the largest up/down disagreement.
inline std::vector<SecondOrderRun> run_second_order(
    const MaterialModel& model, std::span<const double> grid_ascending,
    std::span<const double> applied_fields, double epsilon) {
  if (model.lambda_prime != 0.0)
    throw std::invalid_argument(
        "run_second_order: lambda_prime must be zero; use run_first_order");
  const double t_c = critical_temperature(model);

  std::vector<SecondOrderRun> out;
  for (const double b : applied_fields) {
    const SweepResult heating =
        sweep_temperature(model, grid_ascending, b, SweepDirection::up, 1.0);
    const SweepResult cooling =
        sweep_temperature(model, grid_ascending, b, SweepDirection::down, 0.0);

    SecondOrderRun run;
    run.applied_b = b;
    const std::size_t n = heating.points.size();
    for (std::size_t i = 0; i < n; ++i)
      run.branch_gap = std::max(
          run.branch_gap, std::abs(heating.points[i].result.m -
                                   cooling.points[n - 1 - i].result.m));
    run.points = detail::process_sweep(model, t_c, Branch::single, heating,
                                       epsilon);
    out.push_back(std::move(run));
  }
  return out;
}

// Hysteresis experiment (lambda' != 0).  Each applied field gets a
// heating branch continued from saturation and a cooling branch
// continued from the disordered side, with their jumps recorded.
inline std::vector<FirstOrderRun> run_first_order(
    const MaterialModel& model, std::span<const double> grid_ascending,
    std::span<const double> applied_fields, double epsilon) {
  if (model.lambda_prime == 0.0)
    throw std::invalid_argument(
        "run_first_order: lambda_prime is zero; use run_second_order");
  const double t_c = critical_temperature(model);

  std::vector<FirstOrderRun> out;
  for (const double b : applied_fields) {
    const SweepResult heating =
        sweep_temperature(model, grid_ascending, b, SweepDirection::up, 1.0);
    const SweepResult cooling =
        sweep_temperature(model, grid_ascending, b, SweepDirection::down, 0.0);

    FirstOrderRun run;
    run.applied_b = b;
    run.heating_transitions = heating.transitions;
    run.cooling_transitions = cooling.transitions;
    const std::size_t n = heating.points.size();
    for (std::size_t i = 0; i < n; ++i)
      run.max_branch_gap = std::max(
          run.max_branch_gap, std::abs(heating.points[i].result.m -
                                       cooling.points[n - 1 - i].result.m));
    run.heating =
        detail::process_sweep(model, t_c, Branch::up, heating, epsilon);
    run.cooling =
        detail::process_sweep(model, t_c, Branch::down, cooling, epsilon);
    out.push_back(std::move(run));
  }
  return out;
}

// Single-point write/read round trip, the end-to-end check that the
// angle map plus readout reproduces the mean-field moment it encodes.
inline CurvePoint roundtrip_magnetization(const MaterialModel& model,
                                          double temperature, double applied_b,
                                          double branch_seed, double epsilon) {
  if (model.spin != 1.5)
    throw std::invalid_argument(
        "roundtrip_magnetization: four levels require S = 3/2");
  const double t_c = critical_temperature(model);
  const SelfConsistentResult sc =
      solve_self_consistent(model, temperature, applied_b, branch_seed);
  if (!sc.converged)
    throw SolverError("roundtrip_magnetization: solve did not converge",
                      temperature);
  const SweepPoint pt{temperature, sc, BranchTag::reseeded};
  return detail::write_and_read(model, t_c, Branch::single, pt, epsilon);
}

}  // namespace ferrowrite
