#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "ferrowrite/constants.hpp"

namespace ferrowrite {

// Checks that 2S is a positive integer (S = 1/2, 1, 3/2, ...).
inline bool is_valid_spin(double spin) {
  if (!std::isfinite(spin) || spin < 0.5) return false;
  const double doubled = 2.0 * spin;
  return std::abs(doubled - std::round(doubled)) < 1e-9;
}

// Mean-field description of one magnetic sublattice.  The quadratic
// exchange coupling lambda is derived from the microscopic exchange
// energy; the cubic coefficient lambda_prime is stored directly.
//
// Unit conventions (SI throughout):
//   exchange_energy  J        per-bond isotropic exchange
//   lambda           T/(J/T)  from  lambda = 2 (g-1)^2 z J_ex / (g mu_B)^2
//   lambda_prime     T/(J/T)^3
// Magnetization M is the per-ion moment in J/T; B fields in tesla.
struct MaterialModel {
  double spin = 1.5;
  double lande_g = 2.0;
  int neighbors = 6;
  double exchange_energy = 0.0;
  double lambda_prime = 0.0;
};

inline void validate_material(const MaterialModel& model) {
  if (!is_valid_spin(model.spin))
    throw std::invalid_argument("spin must be a positive half-integer");
  if (!std::isfinite(model.lande_g) || model.lande_g <= 0.0)
    throw std::invalid_argument("lande_g must be positive");
  if (model.neighbors < 1)
    throw std::invalid_argument("neighbors must be at least 1");
  if (!std::isfinite(model.exchange_energy))
    throw std::invalid_argument("exchange_energy must be finite");
  if (!std::isfinite(model.lambda_prime))
    throw std::invalid_argument("lambda_prime must be finite");
}

// Saturation moment per ion, g mu_B S, in J/T.
inline double saturation_moment(const MaterialModel& model) {
  return model.lande_g * constants::bohr_magneton * model.spin;
}

// Molecular-field coefficient lambda = 2 (g-1)^2 z J_ex / (g mu_B)^2.
inline double exchange_lambda(const MaterialModel& model) {
  const double gmu = model.lande_g * constants::bohr_magneton;
  const double gfac = model.lande_g - 1.0;
  return 2.0 * gfac * gfac * static_cast<double>(model.neighbors) *
         model.exchange_energy / (gmu * gmu);
}

// Builds a model from a target lambda instead of J_ex.  Fails for g = 1,
// where the projected moment vanishes and no finite J_ex reproduces a
// nonzero lambda.
inline MaterialModel material_from_lambda(double spin, double lande_g,
                                          int neighbors, double lambda,
                                          double lambda_prime) {
  if (std::abs(lande_g - 1.0) < 1e-12 && lambda != 0.0)
    throw std::invalid_argument(
        "lambda cannot be realized at g = 1; specify exchange_energy");
  const double gmu = lande_g * constants::bohr_magneton;
  const double gfac = lande_g - 1.0;
  MaterialModel model{spin, lande_g, neighbors,
                      lambda * gmu * gmu /
                          (2.0 * gfac * gfac * static_cast<double>(neighbors)),
                      lambda_prime};
  validate_material(model);
  return model;
}

// Curie temperature T_c = (g mu_B)^2 S (S+1) lambda / (3 k_B).
// Defined only for a ferromagnetic coupling (lambda > 0).
inline double critical_temperature(const MaterialModel& model) {
  const double lambda = exchange_lambda(model);
  if (lambda <= 0.0)
    throw std::domain_error("critical temperature requires lambda > 0");
  const double gmu = model.lande_g * constants::bohr_magneton;
  return gmu * gmu * model.spin * (model.spin + 1.0) * lambda /
         (3.0 * constants::boltzmann);
}

// Effective field seen by one ion: applied field plus molecular field
// with its cubic correction.  M is the per-ion moment in J/T.
inline double effective_field(const MaterialModel& model, double applied_b,
                              double magnetization) {
  const double m2 = magnetization * magnetization;
  return applied_b + exchange_lambda(model) * magnetization +
         model.lambda_prime * m2 * magnetization;
}

// Dimensionless cubic-to-quadratic coupling ratio
// r = lambda_prime (g mu_B S)^2 / lambda, the knob that decides whether
// the zero-field transition is continuous (r below 51/125 for S = 3/2)
// or first order.
inline double reduced_cubic_ratio(const MaterialModel& model) {
  const double lambda = exchange_lambda(model);
  if (lambda == 0.0)
    throw std::domain_error("cubic ratio undefined at lambda = 0");
  const double moment = saturation_moment(model);
  return model.lambda_prime * moment * moment / lambda;
}

}  // namespace ferrowrite
