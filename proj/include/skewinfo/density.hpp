#pragma once

//
// Density matrices: validation, seeded Ginibre generators, regularization,
// and the d^2 spanning family used for channel-equality checks.
//

#include <utility>
#include <vector>

#include "skewinfo/eig.hpp"
#include "skewinfo/matrix.hpp"
#include "skewinfo/rng.hpp"
#include "skewinfo/tolerance.hpp"

namespace skewinfo {

class DensityMatrix {
 public:
  // Certifies: square, finite, Hermitian (assert_atol), eigenvalues above
  // -eig_clamp, unit trace (assert_atol). Violations are reported in that
  // order. The stored matrix is the Hermitian part of the candidate.
  static DensityMatrix validate(const Matrix& candidate,
                                const TolerancePolicy& tol = default_tolerance()) {
    if (!is_square(candidate)) {
      throw std::invalid_argument("density validate: matrix is not square");
    }
    if (!all_finite(candidate)) {
      throw std::invalid_argument("density validate: non-finite entries");
    }
    Matrix sym = 0.5 * (candidate + candidate.adjoint());
    if (max_abs_diff(candidate, sym) > tol.assert_atol) {
      throw std::invalid_argument("density validate: not Hermitian within assert_atol");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("density validate: eigendecomposition did not converge");
    }
    if (solver.eigenvalues().minCoeff() < -tol.eig_clamp) {
      throw std::invalid_argument("density validate: negative eigenvalue below -eig_clamp");
    }
    if (std::abs(sym.trace().real() - 1.0) > tol.assert_atol ||
        std::abs(sym.trace().imag()) > tol.assert_atol) {
      throw std::invalid_argument("density validate: trace differs from 1 beyond assert_atol");
    }
    return DensityMatrix(std::move(sym));
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }

 private:
  explicit DensityMatrix(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

// Ginibre-induced random state: G is dim x rank of standard complex
// Gaussians, the state is G G^dag normalized. rank = dim gives the
// Hilbert-Schmidt measure; rank = 1 gives Haar-random pure states.
inline DensityMatrix random_density(int dim, int rank, Rng& rng,
                                    const TolerancePolicy& tol = default_tolerance()) {
  if (dim < 1) throw std::invalid_argument("random_density: dim must be positive");
  if (rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density: rank must lie in [1, dim]");
  }
  Matrix g = ginibre(dim, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix::validate(m, tol);
}

inline DensityMatrix random_density(int dim, int rank, RngSeed seed,
                                    const TolerancePolicy& tol = default_tolerance()) {
  Rng rng(seed);
  return random_density(dim, rank, rng, tol);
}

inline DensityMatrix maximally_mixed(int dim,
                                     const TolerancePolicy& tol = default_tolerance()) {
  if (dim < 1) throw std::invalid_argument("maximally_mixed: dim must be positive");
  return DensityMatrix::validate(Matrix::Identity(dim, dim) / static_cast<double>(dim), tol);
}

// (1 - delta) rho + delta I/dim; output min eigenvalue is at least delta/dim.
inline DensityMatrix regularize(const DensityMatrix& rho, double delta,
                                const TolerancePolicy& tol = default_tolerance()) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("regularize: delta must lie in (0, 1)");
  }
  const int d = rho.dim();
  Matrix m = (1.0 - delta) * rho.mat() +
             (delta / static_cast<double>(d)) * Matrix::Identity(d, d);
  return DensityMatrix::validate(m, tol);
}

inline double min_eigenvalue(const DensityMatrix& rho,
                             const TolerancePolicy& tol = default_tolerance()) {
  return hermitian_eig(rho.mat(), tol).eigenvalues.minCoeff();
}

// d^2 density matrices whose real span is the full Hermitian space:
// |i><i|, and the +/i superposition projectors for each pair i < j.
// Two channels agreeing on this family agree everywhere.
inline std::vector<DensityMatrix> spanning_density_set(
    int dim, const TolerancePolicy& tol = default_tolerance()) {
  std::vector<DensityMatrix> states;
  states.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    states.push_back(DensityMatrix::validate(matrix_unit(dim, i, i), tol));
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      Eigen::VectorXcd plus = Eigen::VectorXcd::Zero(dim);
      plus[i] = Complex(1.0, 0.0);
      plus[j] = Complex(1.0, 0.0);
      plus /= std::sqrt(2.0);
      states.push_back(DensityMatrix::validate(plus * plus.adjoint(), tol));

      Eigen::VectorXcd imag = Eigen::VectorXcd::Zero(dim);
      imag[i] = Complex(1.0, 0.0);
      imag[j] = Complex(0.0, 1.0);
      imag /= std::sqrt(2.0);
      states.push_back(DensityMatrix::validate(imag * imag.adjoint(), tol));
    }
  }
  return states;
}

}  // namespace skewinfo
