#pragma once

// Independent reference implementations used only by tests.  These are
// deliberately different algorithms from the library's partition-sum
// path: closed forms built on a cancellation-free coth(x) - 1/x, plus
// small-argument series, so the two sides can cross-check each other.

#include <array>
#include <cmath>
#include <random>

#include "ferrowrite/rotations.hpp"

namespace oracles {

// coth(x) - 1/x without the 1/x cancellation: series below |x| = 0.25,
// direct evaluation above, where the subtraction is benign.
inline double cothm(double x) {
  const double ax = std::abs(x);
  if (ax < 0.25) {
    const double x2 = x * x;
    // Laurent coefficients of coth: 1/3, -1/45, 2/945, -1/4725,
    // 2/93555, -1382/638512875.
    return x * (1.0 / 3.0 +
                x2 * (-1.0 / 45.0 +
                      x2 * (2.0 / 945.0 +
                            x2 * (-1.0 / 4725.0 +
                                  x2 * (2.0 / 93555.0 +
                                        x2 * (-1382.0 / 638512875.0))))));
  }
  return 1.0 / std::tanh(x) - 1.0 / x;
}

// Closed-form Brillouin-type thermal average with the per-level
// argument convention: the 1/(S y) poles of the two coth terms cancel
// algebraically, so only the cothm parts remain.
inline double closed_form_average(double spin, double y) {
  const double two_s = 2.0 * spin;
  return ((two_s + 1.0) / two_s) * cothm(0.5 * (two_s + 1.0) * y) -
         (1.0 / two_s) * cothm(0.5 * y);
}

// Leading series for S = 3/2: (5/6) y - (17/72) y^3.
inline double series_3_2(double y) {
  return (5.0 / 6.0) * y - (17.0 / 72.0) * y * y * y;
}

// Ladder marginals of the S = 3/2 Boltzmann populations.
inline double marginal_a(double y) { return std::tanh(y); }
inline double marginal_b(double y) { return std::tanh(0.5 * y); }

// Half-L1 distance between the diagonals, the trace distance of two
// dephased states computed without any eigensolver.
inline double half_l1(const std::array<double, 4>& p,
                      const std::array<double, 4>& q) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

// Deterministic random state factory: rho = G G^dag / tr, always a
// valid density matrix.
inline ferrowrite::DensityMatrix random_density(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ferrowrite::Mat4 g;
  for (auto& entry : g.a)
    entry = ferrowrite::complexd(gauss(rng), gauss(rng));
  ferrowrite::Mat4 gram = g * g.adjoint();
  const double tr = gram.trace().real();
  return ferrowrite::DensityMatrix(
      ferrowrite::complexd(1.0 / tr) * gram);
}

inline ferrowrite::PulseAngles random_angles(std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.0, 3.141592653589793);
  return {uni(rng), uni(rng), uni(rng), uni(rng)};
}

}  // namespace oracles
