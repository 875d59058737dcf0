#pragma once

#include <cmath>
#include <stdexcept>

#include "ferrowrite/material.hpp"

namespace ferrowrite {

// Thermal average <m>/S over the 2S+1 Zeeman levels m = -S..S with
// weights exp(y m), evaluated as an explicit partition sum.  The shift
// by |y| S keeps every exponent nonpositive, so the sum neither
// overflows nor loses the dominant term; underflow of far levels is
// harmless.  Equals the closed-form Brillouin function of the same
// argument.  Odd in y, strictly increasing, |result| < 1 for finite y.
inline double brillouin(double spin, double y) {
  if (!is_valid_spin(spin))
    throw std::invalid_argument("brillouin: spin must be a half-integer");
  if (!std::isfinite(y))
    throw std::domain_error("brillouin: y must be finite");

  const int levels = static_cast<int>(std::lround(2.0 * spin)) + 1;
  const double shift = std::abs(y) * spin;
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k < levels; ++k) {
    const double m = -spin + static_cast<double>(k);
    const double w = std::exp(y * m - shift);
    num += m * w;
    den += w;
  }
  return num / (den * spin);
}

}  // namespace ferrowrite
