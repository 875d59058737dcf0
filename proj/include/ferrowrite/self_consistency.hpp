#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ferrowrite/brillouin.hpp"
#include "ferrowrite/material.hpp"

namespace ferrowrite {

namespace solver {
inline constexpr double damping = 0.5;
inline constexpr int fixed_point_cap = 10000;
inline constexpr double residual_tol = 1e-10;
// Fixed-point progress is reviewed every stagnation_window iterations;
// less than a 2x residual reduction per window hands off to bisection.
inline constexpr int stagnation_window = 256;
// Every solve finishes with a bracketing bisection tightened to this
// interval width, so the returned m is pinned to the root itself rather
// than to wherever the iteration stopped.  A residual test alone cannot
// do that: at T = T_c the map degenerates to f ~ m^3 and |f| < 1e-10
// still admits |m| ~ 6e-4.
inline constexpr double root_width = 1e-12;
}  // namespace solver

struct SelfConsistentResult {
  double m = 0.0;              // reduced magnetization, M / (g mu_B S)
  double magnetization = 0.0;  // per-ion moment, J/T
  double b_effective = 0.0;    // tesla
  double residual = 0.0;       // |m - rhs(m)| at exit
  int iterations = 0;
  bool converged = false;
};

namespace detail {

// Dimensionless Zeeman argument of the self-consistency map at reduced
// magnetization m.  All three coefficients are O(1) ratios, so nothing
// here touches the 1e-23 scale of the raw SI constants.
struct ReducedMap {
  double spin;
  double y0;  // g mu_B B0 / (k_B T)
  double a1;  // g mu_B lambda moment / (k_B T)
  double a3;  // g mu_B lambda_prime moment^3 / (k_B T)

  ReducedMap(const MaterialModel& model, double temperature, double applied_b)
      : spin(model.spin) {
    const double gmu = model.lande_g * constants::bohr_magneton;
    const double kt = constants::boltzmann * temperature;
    const double moment = saturation_moment(model);
    y0 = gmu * applied_b / kt;
    a1 = gmu * exchange_lambda(model) * moment / kt;
    a3 = gmu * model.lambda_prime * moment * moment * moment / kt;
  }

  double rhs(double m) const {
    return brillouin(spin, y0 + a1 * m + a3 * m * m * m);
  }
};

// Root polish run after every fixed-point exit, converged or stalled.
// Marches from the current iterate in the direction the iteration was
// moving, doubling the step, until f = m - rhs(m) changes sign, then
// bisects the bracket down to solver::root_width.  Searching
// directionally keeps the solve on the root the damped iteration was
// approaching instead of snapping to a different branch (f generally
// has three zeros below T_c).
//
// When the bracket straddles zero and f(0) vanishes exactly (always
// the case at zero applied field: the partition sum is even in the
// level index, so the computed average cancels identically), m = 0 is
// returned outright.  Near the degenerate critical root the computed f
// is noise for |m| below ~1e-5, so bisection alone cannot do better.
inline bool bisect_from(const ReducedMap& map, double& m, double& residual,
                        int& iterations) {
  auto f = [&](double x) { return x - map.rhs(x); };

  double a = std::clamp(m, -1.0, 1.0);
  double fa = f(a);
  ++iterations;
  if (fa == 0.0) {
    m = a;
    residual = 0.0;
    return true;
  }

  // A positive f means the iterate sits above its image, so the
  // iteration was drifting downward; search that way.
  const double dir = (fa > 0.0) ? -1.0 : 1.0;
  double step = 1e-4;
  double b = a;
  double fb = fa;
  bool bracketed = false;
  while (true) {
    const double next = std::clamp(b + dir * step, -1.0, 1.0);
    const double fnext = f(next);
    ++iterations;
    if (fb * fnext <= 0.0) {
      a = b;
      fa = fb;
      b = next;
      fb = fnext;
      bracketed = true;
      break;
    }
    if (next == -1.0 || next == 1.0) break;  // hit the wall, no crossing
    b = next;
    fb = fnext;
    step *= 2.0;
  }
  if (!bracketed) {
    // Unreachable through solve_self_consistent: f(-1) < 0 < f(1) for
    // every finite argument, so a directional march always crosses.
    residual = std::abs(fb);
    m = b;
    return false;
  }

  double lo = std::min(a, b);
  double hi = std::max(a, b);
  double flo = (lo == a) ? fa : fb;

  if (lo <= 0.0 && 0.0 <= hi) {
    const double fzero = f(0.0);
    ++iterations;
    if (fzero == 0.0) {
      m = 0.0;
      residual = 0.0;
      return true;
    }
  }

  for (int i = 0; i < 200 && hi - lo > solver::root_width; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    ++iterations;
    if (fmid == 0.0) {
      m = mid;
      residual = 0.0;
      return true;
    }
    if (flo * fmid < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  m = 0.5 * (lo + hi);
  residual = std::abs(f(m));
  ++iterations;
  return true;
}

}  // namespace detail

// Solves m = b(S, y(m)) for the reduced magnetization at fixed T and
// applied field, starting from m_init.  Damped fixed-point iteration
// locates the basin (bailing out early when progress stalls: the map's
// slope approaches 1 near the critical point, where plain iteration
// needs ~1e5 steps), then a bracketing bisection pins the root to
// solver::root_width so the answer does not depend on the approach
// path.  Which root is found depends on m_init; sweeps exploit that
// for branch continuation.
//
// At T = 0 the thermal average degenerates to full saturation along
// the effective field evaluated at the seed; a zero field with a
// positive seed saturates to +1, an exactly zero seed stays at 0.
inline SelfConsistentResult solve_self_consistent(const MaterialModel& model,
                                                  double temperature,
                                                  double applied_b,
                                                  double m_init) {
  validate_material(model);
  if (!std::isfinite(temperature) || temperature < 0.0)
    throw std::domain_error("solve_self_consistent: temperature must be >= 0");
  if (!std::isfinite(applied_b))
    throw std::invalid_argument("solve_self_consistent: applied_b not finite");
  if (!std::isfinite(m_init) || std::abs(m_init) > 1.0)
    throw std::invalid_argument(
        "solve_self_consistent: m_init must lie in [-1, 1]");

  SelfConsistentResult out;
  const double moment = saturation_moment(model);

  if (temperature == 0.0) {
    const double seed_field = effective_field(model, applied_b,
                                              moment * m_init);
    if (seed_field > 0.0)
      out.m = 1.0;
    else if (seed_field < 0.0)
      out.m = -1.0;
    else
      out.m = (m_init > 0.0) ? 1.0 : (m_init < 0.0 ? -1.0 : 0.0);
    out.converged = true;
    out.residual = 0.0;
    out.magnetization = moment * out.m;
    out.b_effective = effective_field(model, applied_b, out.magnetization);
    return out;
  }

  const detail::ReducedMap map(model, temperature, applied_b);
  double m = std::clamp(m_init, -1.0, 1.0);
  double window_res = std::numeric_limits<double>::infinity();

  for (out.iterations = 0; out.iterations < solver::fixed_point_cap;) {
    const double image = map.rhs(m);
    ++out.iterations;
    out.residual = std::abs(m - image);
    if (out.residual < solver::residual_tol) break;
    m = (1.0 - solver::damping) * m + solver::damping * image;
    if (out.iterations % solver::stagnation_window == 0) {
      if (out.residual > 0.5 * window_res) break;  // stalled near a slope-1 point
      window_res = out.residual;
    }
  }

  out.converged = detail::bisect_from(map, m, out.residual, out.iterations);

  out.m = m;
  out.magnetization = moment * m;
  out.b_effective = effective_field(model, applied_b, out.magnetization);
  return out;
}

}  // namespace ferrowrite
