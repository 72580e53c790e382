#pragma once

//
// Hermitian eigendecomposition and spectral matrix functions (sqrt, power,
// log). All spectral calculus for density operators goes through here so the
// eigenvalue clamping policy is applied in exactly one place.
//

#include <cmath>
#include <stdexcept>
#include <utility>

#include "skewinfo/matrix.hpp"
#include "skewinfo/tolerance.hpp"

namespace skewinfo {

struct HermitianEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns, unitary
};

inline HermitianEig hermitian_eig(const Matrix& m,
                                  const TolerancePolicy& tol = default_tolerance()) {
  if (!is_square(m)) {
    throw std::invalid_argument("hermitian_eig: matrix must be square");
  }
  Matrix sym = 0.5 * (m + m.adjoint());
  if (max_abs_diff(m, sym) > tol.assert_atol) {
    throw std::invalid_argument("hermitian_eig: input is not Hermitian within assert_atol");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Clamp rounding noise in a PSD spectrum: [-eig_clamp, 0) -> 0, below is an error.
inline RealVector clamp_psd_spectrum(const RealVector& w, const TolerancePolicy& tol) {
  RealVector out = w;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] < -tol.eig_clamp) {
      throw std::domain_error("eigenvalue below -eig_clamp: matrix is not positive semidefinite");
    }
    if (out[i] < 0.0) out[i] = 0.0;
  }
  return out;
}

template <class F>
Matrix spectral_apply(const HermitianEig& eig, F&& f) {
  RealVector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped[i] = f(eig.eigenvalues[i]);
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

inline Matrix matrix_sqrt(const Matrix& m, const TolerancePolicy& tol = default_tolerance()) {
  HermitianEig eig = hermitian_eig(m, tol);
  eig.eigenvalues = clamp_psd_spectrum(eig.eigenvalues, tol);
  return spectral_apply(eig, [](double x) { return std::sqrt(x); });
}

// m^q with the convention 0^q = 0 for q > 0; q <= 0 requires strict positivity.
inline Matrix matrix_power(const Matrix& m, double q,
                           const TolerancePolicy& tol = default_tolerance()) {
  HermitianEig eig = hermitian_eig(m, tol);
  eig.eigenvalues = clamp_psd_spectrum(eig.eigenvalues, tol);
  if (q <= 0.0 && eig.eigenvalues.minCoeff() <= tol.eig_clamp) {
    throw std::domain_error("matrix_power: nonpositive exponent on a singular matrix");
  }
  return spectral_apply(eig, [q](double x) { return x == 0.0 ? 0.0 : std::pow(x, q); });
}

inline Matrix matrix_log(const Matrix& m, const TolerancePolicy& tol = default_tolerance()) {
  HermitianEig eig = hermitian_eig(m, tol);
  eig.eigenvalues = clamp_psd_spectrum(eig.eigenvalues, tol);
  if (eig.eigenvalues.minCoeff() <= tol.eig_clamp) {
    throw std::domain_error("matrix_log: log of a singular matrix");
  }
  return spectral_apply(eig, [](double x) { return std::log(x); });
}

}  // namespace skewinfo
