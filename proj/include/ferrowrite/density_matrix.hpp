#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "ferrowrite/material.hpp"

namespace ferrowrite {

using complexd = std::complex<double>;

// Dense 4x4 complex matrix in row-major order.  Four levels are the
// whole Hilbert space here (two qubits), so everything is fixed-size
// and allocation-free.  Basis convention, fixed across the library:
// index 0..3 = |00>, |01>, |10>, |11>, identified with the spin ladder
// m = +3/2, +1/2, -1/2, -3/2 in that order.
struct Mat4 {
  std::array<complexd, 16> a{};

  complexd& operator()(int r, int c) { return a[4 * r + c]; }
  const complexd& operator()(int r, int c) const { return a[4 * r + c]; }

  static Mat4 identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }

  static Mat4 diagonal(const std::array<double, 4>& d) {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = d[i];
    return m;
  }

  Mat4 adjoint() const {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out(r, c) = std::conj((*this)(c, r));
    return out;
  }

  complexd trace() const {
    return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2) + (*this)(3, 3);
  }

  friend Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 out;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        complexd s = 0.0;
        for (int k = 0; k < 4; ++k) s += x(r, k) * y(k, c);
        out(r, c) = s;
      }
    return out;
  }

  friend Mat4 operator+(const Mat4& x, const Mat4& y) {
    Mat4 out;
    for (int i = 0; i < 16; ++i) out.a[i] = x.a[i] + y.a[i];
    return out;
  }

  friend Mat4 operator-(const Mat4& x, const Mat4& y) {
    Mat4 out;
    for (int i = 0; i < 16; ++i) out.a[i] = x.a[i] - y.a[i];
    return out;
  }

  friend Mat4 operator*(complexd s, const Mat4& x) {
    Mat4 out;
    for (int i = 0; i < 16; ++i) out.a[i] = s * x.a[i];
    return out;
  }
};

// Largest |a_rc - conj(a_cr)| over all entries; zero for Hermitian.
inline double hermiticity_defect(const Mat4& m) {
  double worst = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = r; c < 4; ++c)
      worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
  return worst;
}

struct EigenDecomposition {
  std::array<double, 4> values{};  // ascending
  Mat4 vectors;                    // columns, matching values
};

// Cyclic Jacobi diagonalization for a 4x4 Hermitian matrix.  Each pivot
// (p, q) is first phase-rotated so the off-diagonal entry is real, then
// annihilated with the stable tan(2*theta) Givens formula.  Quadratic
// convergence makes a handful of sweeps enough; the off-diagonal norm
// is driven below `offdiag_tol` in absolute terms.
inline EigenDecomposition eigen_hermitian(const Mat4& matrix,
                                          double offdiag_tol = 1e-13) {
  if (hermiticity_defect(matrix) > 1e-9)
    throw std::invalid_argument("eigen_hermitian: matrix is not Hermitian");

  Mat4 a = matrix;
  // Symmetrize exactly so rounding in the input cannot bias the sweep.
  for (int r = 0; r < 4; ++r) {
    a(r, r) = complexd(a(r, r).real(), 0.0);
    for (int c = r + 1; c < 4; ++c) {
      const complexd mean = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = mean;
      a(c, r) = std::conj(mean);
    }
  }
  Mat4 v = Mat4::identity();

  auto offdiag = [&]() {
    double s = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = r + 1; c < 4; ++c) s += std::norm(a(r, c));
    return std::sqrt(2.0 * s);
  };

  for (int sweep = 0; sweep < 60; ++sweep) {
    if (offdiag() < offdiag_tol) break;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const complexd apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;

        // Phase e^{i phi} of the pivot; the combined rotation is the
        // product of diag(1, e^{-i phi}) on (p, q) and a real Givens.
        const complexd phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Column rotation R: R(p,p)=c, R(p,q)=s, R(q,p)=-s conj(phase),
        // R(q,q)=c conj(phase).  Apply A <- R^dag A R, V <- V R.
        const complexd rqp = -s * std::conj(phase);
        const complexd rqq = c * std::conj(phase);
        for (int r = 0; r < 4; ++r) {
          const complexd arp = a(r, p);
          const complexd arq = a(r, q);
          a(r, p) = arp * c + arq * rqp;
          a(r, q) = arp * s + arq * rqq;
        }
        for (int col = 0; col < 4; ++col) {
          const complexd apc = a(p, col);
          const complexd aqc = a(q, col);
          a(p, col) = c * apc + std::conj(rqp) * aqc;
          a(q, col) = s * apc + std::conj(rqq) * aqc;
        }
        for (int r = 0; r < 4; ++r) {
          const complexd vrp = v(r, p);
          const complexd vrq = v(r, q);
          v(r, p) = vrp * c + vrq * rqp;
          v(r, q) = vrp * s + vrq * rqq;
        }
      }
    }
  }
  if (offdiag() >= offdiag_tol)
    throw std::runtime_error("eigen_hermitian: Jacobi sweep did not settle");

  EigenDecomposition out;
  std::array<int, 4> order{0, 1, 2, 3};
  std::array<double, 4> vals;
  for (int i = 0; i < 4; ++i) vals[i] = a(i, i).real();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (vals[order[j]] < vals[order[i]]) std::swap(order[i], order[j]);
  for (int i = 0; i < 4; ++i) {
    out.values[i] = vals[order[i]];
    for (int r = 0; r < 4; ++r) out.vectors(r, i) = v(r, order[i]);
  }
  return out;
}

namespace density {
inline constexpr double hermitian_tol = 1e-12;
inline constexpr double trace_tol = 1e-12;
inline constexpr double positivity_tol = 1e-12;
}  // namespace density

// A physical two-qubit state.  Construction validates Hermiticity,
// unit trace, and positivity (eigenvalues >= -1e-12), then stores the
// exactly Hermitized matrix, so downstream code can rely on the
// invariants instead of rechecking them.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat4& m) : m_(m) {
    if (hermiticity_defect(m) > density::hermitian_tol)
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m.trace() - complexd(1.0)) > density::trace_tol)
      throw std::invalid_argument("DensityMatrix: trace differs from 1");
    for (int r = 0; r < 4; ++r) {
      m_(r, r) = complexd(m_(r, r).real(), 0.0);
      for (int c = r + 1; c < 4; ++c) {
        const complexd mean = 0.5 * (m_(r, c) + std::conj(m_(c, r)));
        m_(r, c) = mean;
        m_(c, r) = std::conj(mean);
      }
    }
    const EigenDecomposition eig = eigen_hermitian(m_);
    if (eig.values[0] < -density::positivity_tol)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }

  const Mat4& matrix() const { return m_; }
  complexd operator()(int r, int c) const { return m_(r, c); }

  std::array<double, 4> populations() const {
    return {m_(0, 0).real(), m_(1, 1).real(), m_(2, 2).real(),
            m_(3, 3).real()};
  }

 private:
  Mat4 m_;
};

inline DensityMatrix maximally_mixed() {
  return DensityMatrix(0.25 * Mat4::identity());
}

inline DensityMatrix basis_projector(int level) {
  if (level < 0 || level > 3)
    throw std::invalid_argument("basis_projector: level must be 0..3");
  Mat4 m;
  m(level, level) = 1.0;
  return DensityMatrix(m);
}

// Spin ladder values behind basis indices 0..3.
inline constexpr std::array<double, 4> ladder_m{1.5, 0.5, -0.5, -1.5};

// Boltzmann state of the four-level ladder in an effective field.
// T = 0 collapses to the ground-state projector (sign of the field
// picks the end of the ladder); a zero field gives the maximally mixed
// state, including in the doubly degenerate T = 0 limit.
inline DensityMatrix thermal_density_matrix(const MaterialModel& model,
                                            double b_effective,
                                            double temperature) {
  validate_material(model);
  if (!std::isfinite(temperature) || temperature < 0.0)
    throw std::domain_error(
        "thermal_density_matrix: temperature must be >= 0");
  if (!std::isfinite(b_effective))
    throw std::invalid_argument("thermal_density_matrix: field not finite");

  if (b_effective == 0.0) return maximally_mixed();
  if (temperature == 0.0)
    return basis_projector(b_effective > 0.0 ? 0 : 3);

  const double y = model.lande_g * constants::bohr_magneton * b_effective /
                   (constants::boltzmann * temperature);
  std::array<double, 4> p{};
  const double top = std::abs(y) * 1.5;
  double z = 0.0;
  for (int k = 0; k < 4; ++k) {
    p[k] = std::exp(y * ladder_m[k] - top);
    z += p[k];
  }
  for (double& w : p) w /= z;
  return DensityMatrix(Mat4::diagonal(p));
}

// Projects onto the diagonal: the state after full dephasing, which is
// all a population readout can see.
inline DensityMatrix zero_coherences(const DensityMatrix& rho) {
  return DensityMatrix(Mat4::diagonal(rho.populations()));
}

// Longitudinal moment g mu_B <m> of the four-level state, in J/T.
inline double magnetization_readout(const DensityMatrix& rho,
                                    const MaterialModel& model) {
  const std::array<double, 4> p = rho.populations();
  double avg = 0.0;
  for (int k = 0; k < 4; ++k) avg += p[k] * ladder_m[k];
  return model.lande_g * constants::bohr_magneton * avg;
}

// Trace distance D = (1/2) sum |eigenvalues of rho - sigma|.  For a
// pair of diagonal states this is half the L1 population distance.
inline double trace_distance(const DensityMatrix& rho,
                             const DensityMatrix& sigma) {
  const EigenDecomposition eig =
      eigen_hermitian(rho.matrix() - sigma.matrix());
  double sum = 0.0;
  for (const double v : eig.values) sum += std::abs(v);
  return 0.5 * sum;
}

}  // namespace ferrowrite
