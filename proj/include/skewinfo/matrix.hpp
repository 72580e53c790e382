#pragma once

//
// Dense complex-matrix primitives: Hilbert-Schmidt geometry, commutators,
// Kronecker products and small helpers used across the library.
//
// Conventions: hs_inner(X, Y) = Tr(X^dag Y) is conjugate-linear in the first
// argument; hs_norm_sq(X) = Tr(X^dag X) is the squared Frobenius norm.
//

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "skewinfo/tolerance.hpp"

namespace skewinfo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline bool is_square(const Matrix& m) { return m.rows() == m.cols(); }

// Largest entrywise modulus; the metric used for operator-equality checks.
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return max_abs(a - b);
}

inline double hs_norm_sq(const Matrix& x) { return x.squaredNorm(); }

inline Complex hs_inner(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw std::invalid_argument("hs_inner: shape mismatch");
  }
  return (x.adjoint() * y).trace();
}

inline Matrix commutator(const Matrix& x, const Matrix& y) {
  if (!is_square(x) || !is_square(y) || x.rows() != y.rows()) {
    throw std::invalid_argument("commutator: operands must be square with equal dimension");
  }
  return x * y - y * x;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// |i><j| on dimension d.
inline Matrix matrix_unit(int dim, int i, int j) {
  Matrix m = Matrix::Zero(dim, dim);
  m(i, j) = Complex(1.0, 0.0);
  return m;
}

inline bool is_hermitian(const Matrix& m, double atol) {
  return is_square(m) && max_abs(Matrix(m - m.adjoint())) <= 2.0 * atol;
}

inline bool is_unitary(const Matrix& m, double atol) {
  return is_square(m) &&
         max_abs(Matrix(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols()))) <= atol;
}

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

}  // namespace skewinfo
