#pragma once

//
// Kraus-channel algebra: application, the Hilbert-Schmidt adjoint, unitary
// Kraus remixing, selective-measurement branches, and the pointer extension
// that turns a channel {M_n} into {M_n (x) U_n} with cyclic shift pointers.
//

#include <optional>
#include <utility>
#include <vector>

#include "skewinfo/density.hpp"
#include "skewinfo/eig.hpp"
#include "skewinfo/matrix.hpp"
#include "skewinfo/rng.hpp"
#include "skewinfo/tolerance.hpp"

namespace skewinfo {

class KrausChannel {
 public:
  // Certifies: nonempty, square operators of a common dimension, and the
  // completeness relation sum_i K_i^dag K_i = I within unitary_atol.
  static KrausChannel validate(std::vector<Matrix> kraus,
                               const TolerancePolicy& tol = default_tolerance()) {
    if (kraus.empty()) {
      throw std::invalid_argument("channel validate: empty Kraus list");
    }
    const Eigen::Index d = kraus.front().rows();
    Matrix sum = Matrix::Zero(d, d);
    for (const Matrix& k : kraus) {
      if (!is_square(k) || k.rows() != d) {
        throw std::invalid_argument("channel validate: Kraus operators must be square with a common dimension");
      }
      if (!all_finite(k)) {
        throw std::invalid_argument("channel validate: non-finite entries");
      }
      sum += k.adjoint() * k;
    }
    if (max_abs(Matrix(sum - Matrix::Identity(d, d))) > tol.unitary_atol) {
      throw std::invalid_argument("channel validate: completeness relation fails within unitary_atol");
    }
    return KrausChannel(std::move(kraus));
  }

  int dim() const { return static_cast<int>(kraus_.front().rows()); }
  int size() const { return static_cast<int>(kraus_.size()); }
  const std::vector<Matrix>& kraus() const { return kraus_; }

 private:
  explicit KrausChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {}
  std::vector<Matrix> kraus_;
};

inline DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho,
                           const TolerancePolicy& tol = default_tolerance()) {
  if (channel.dim() != rho.dim()) {
    throw std::invalid_argument("apply: channel and state dimensions differ");
  }
  const int d = rho.dim();
  Matrix out = Matrix::Zero(d, d);
  for (const Matrix& k : channel.kraus()) out += k * rho.mat() * k.adjoint();
  return DensityMatrix::validate(out, tol);
}

// sum_n M_n^dag X M_n; unital whenever the channel is trace preserving.
inline Matrix apply_adjoint(const KrausChannel& channel, const Matrix& x) {
  if (!is_square(x) || x.rows() != channel.dim()) {
    throw std::invalid_argument("apply_adjoint: operand dimension differs from channel");
  }
  Matrix out = Matrix::Zero(x.rows(), x.cols());
  for (const Matrix& k : channel.kraus()) out += k.adjoint() * x * k;
  return out;
}

// New Kraus list E_i = sum_j u_ij K_j for a unitary u acting on Kraus labels;
// the channel action is unchanged.
inline KrausChannel remix_kraus(const KrausChannel& channel, const Matrix& u,
                                const TolerancePolicy& tol = default_tolerance()) {
  const int m = channel.size();
  if (u.rows() != m || u.cols() != m) {
    throw std::invalid_argument("remix_kraus: remix matrix must be m x m for m Kraus operators");
  }
  if (!is_unitary(u, tol.unitary_atol)) {
    throw std::invalid_argument("remix_kraus: remix matrix is not unitary within unitary_atol");
  }
  std::vector<Matrix> mixed;
  mixed.reserve(static_cast<std::size_t>(m));
  const int d = channel.dim();
  for (int i = 0; i < m; ++i) {
    Matrix e = Matrix::Zero(d, d);
    for (int j = 0; j < m; ++j) e += u(i, j) * channel.kraus()[static_cast<std::size_t>(j)];
    mixed.push_back(std::move(e));
  }
  return KrausChannel::validate(std::move(mixed), tol);
}

struct MeasurementBranch {
  double probability = 0.0;
  // Branches with probability below eig_clamp carry no state and are
  // excluded from weighted sums downstream.
  std::optional<DensityMatrix> state;
};

// Selective measurement outcomes p_n = Tr(M_n rho M_n^dag),
// rho_n = M_n rho M_n^dag / p_n. The branch states are built from the Gram
// form (M_n sqrt(rho))(M_n sqrt(rho))^dag, which keeps small-probability
// outcomes positive semidefinite at their own scale.
inline std::vector<MeasurementBranch> measurement_branches(
    const KrausChannel& channel, const DensityMatrix& rho,
    const TolerancePolicy& tol = default_tolerance()) {
  if (channel.dim() != rho.dim()) {
    throw std::invalid_argument("measurement_branches: channel and state dimensions differ");
  }
  const Matrix sqrt_rho = matrix_sqrt(rho.mat(), tol);
  std::vector<MeasurementBranch> branches;
  branches.reserve(static_cast<std::size_t>(channel.size()));
  for (const Matrix& k : channel.kraus()) {
    Matrix w = k * sqrt_rho;
    Matrix t = w * w.adjoint();
    const double p = t.trace().real();
    if (p < tol.eig_clamp) {
      branches.push_back({p, std::nullopt});
    } else {
      branches.push_back({p, DensityMatrix::validate(t / p, tol)});
    }
  }
  return branches;
}

// Cyclic shift on dimension N by n steps: |k> -> |k + n mod N>.
inline Matrix shift_unitary(int n, int N) {
  if (N < 1) throw std::invalid_argument("shift_unitary: N must be positive");
  Matrix u = Matrix::Zero(N, N);
  for (int k = 0; k < N; ++k) u((k + n) % N, k) = Complex(1.0, 0.0);
  return u;
}

// Pointer extension {M_n (x) U_n} on dimension dim * N, N = Kraus count.
// Acting on rho (x) |0><0| it produces sum_n M_n rho M_n^dag (x) |n><n|.
inline KrausChannel extend_with_pointer(const KrausChannel& channel,
                                        const TolerancePolicy& tol = default_tolerance()) {
  const int n_ops = channel.size();
  std::vector<Matrix> extended;
  extended.reserve(static_cast<std::size_t>(n_ops));
  for (int n = 0; n < n_ops; ++n) {
    extended.push_back(kron(channel.kraus()[static_cast<std::size_t>(n)], shift_unitary(n, n_ops)));
  }
  return KrausChannel::validate(std::move(extended), tol);
}

inline Matrix tensor_with_identity(const Matrix& k, int anc_dim) {
  if (anc_dim < 1) throw std::invalid_argument("tensor_with_identity: ancilla dimension must be positive");
  return kron(k, Matrix::Identity(anc_dim, anc_dim));
}

// Lift of a whole channel to lambda (x) id.
inline KrausChannel tensor_with_identity(const KrausChannel& channel, int anc_dim,
                                         const TolerancePolicy& tol = default_tolerance()) {
  std::vector<Matrix> lifted;
  lifted.reserve(static_cast<std::size_t>(channel.size()));
  for (const Matrix& k : channel.kraus()) lifted.push_back(tensor_with_identity(k, anc_dim));
  return KrausChannel::validate(std::move(lifted), tol);
}

// Generic random TPCP channel: Ginibre operators repaired to completeness by
// the right inverse square root of S = sum G_n^dag G_n.
inline KrausChannel random_channel(int dim, int n_kraus, Rng& rng,
                                   const TolerancePolicy& tol = default_tolerance()) {
  if (n_kraus < 1) throw std::invalid_argument("random_channel: need at least one Kraus operator");
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(n_kraus));
  for (int n = 0; n < n_kraus; ++n) ops.push_back(ginibre(dim, dim, rng));
  Matrix s = Matrix::Zero(dim, dim);
  for (const Matrix& g : ops) s += g.adjoint() * g;
  Matrix s_inv_sqrt = matrix_power(s, -0.5, tol);
  for (Matrix& g : ops) g = g * s_inv_sqrt;
  return KrausChannel::validate(std::move(ops), tol);
}

}  // namespace skewinfo
