#pragma once

#include <cmath>
#include <stdexcept>

#include "ferrowrite/brillouin.hpp"
#include "ferrowrite/material.hpp"

namespace ferrowrite {

// Landau free energy per ion at fixed T, B0 as a function of the trial
// per-ion moment M:
//
//   F(M) = -k_B T ln Z(B_eff(M), T) + (lambda/2) M^2 + (3 lambda'/4) M^4
//
// with Z the single-ion Zeeman partition function in the effective
// field.  The quartic prefactor 3/4 makes dF/dM vanish exactly on
// solutions of the self-consistency equation (see the gradient below).
// ln Z uses a log-sum-exp shift, so large |y| cannot overflow.
inline double free_energy(const MaterialModel& model, double temperature,
                          double applied_b, double magnetization) {
  validate_material(model);
  if (!std::isfinite(temperature) || temperature <= 0.0)
    throw std::domain_error("free_energy: temperature must be > 0");
  if (!std::isfinite(applied_b) || !std::isfinite(magnetization))
    throw std::invalid_argument("free_energy: arguments must be finite");

  const double kt = constants::boltzmann * temperature;
  const double beff = effective_field(model, applied_b, magnetization);
  const double y = model.lande_g * constants::bohr_magneton * beff / kt;

  const int levels = static_cast<int>(std::lround(2.0 * model.spin)) + 1;
  const double shift = std::abs(y) * model.spin;
  double den = 0.0;
  for (int k = 0; k < levels; ++k) {
    const double m = -model.spin + static_cast<double>(k);
    den += std::exp(y * m - shift);
  }
  const double log_z = shift + std::log(den);

  const double m2 = magnetization * magnetization;
  return -kt * log_z + 0.5 * exchange_lambda(model) * m2 +
         0.75 * model.lambda_prime * m2 * m2;
}

// Analytic dF/dM.  The Zeeman term contributes
// -(dB_eff/dM) g mu_B S b(S, y); combined with the polynomial terms it
// factors as (lambda + 3 lambda' M^2) (M - g mu_B S b), so stationary
// points of F are exactly the self-consistent magnetizations.
inline double free_energy_gradient(const MaterialModel& model,
                                   double temperature, double applied_b,
                                   double magnetization) {
  validate_material(model);
  if (!std::isfinite(temperature) || temperature <= 0.0)
    throw std::domain_error("free_energy_gradient: temperature must be > 0");
  if (!std::isfinite(applied_b) || !std::isfinite(magnetization))
    throw std::invalid_argument(
        "free_energy_gradient: arguments must be finite");

  const double kt = constants::boltzmann * temperature;
  const double beff = effective_field(model, applied_b, magnetization);
  const double y = model.lande_g * constants::bohr_magneton * beff / kt;
  const double equilibrium =
      saturation_moment(model) * brillouin(model.spin, y);
  const double stiffness = exchange_lambda(model) +
                           3.0 * model.lambda_prime * magnetization *
                               magnetization;
  return stiffness * (magnetization - equilibrium);
}

}  // namespace ferrowrite
