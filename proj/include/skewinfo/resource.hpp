#pragma once

//
// Resource-destroying maps (dephasing, finite-group twirling), free-state
// predicates, numerical commutant computation, constructive sampling of free
// operations whose Kraus operators commute with the destroyer's, and the
// commutation/fixed-point checker behind the free-operation conditions.
//

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewinfo/channel.hpp"
#include "skewinfo/density.hpp"
#include "skewinfo/eig.hpp"
#include "skewinfo/group.hpp"
#include "skewinfo/matrix.hpp"
#include "skewinfo/rng.hpp"
#include "skewinfo/tolerance.hpp"

namespace skewinfo {

enum class ResourceLabel { dephasing, twirling, custom };

inline const char* to_string(ResourceLabel label) {
  switch (label) {
    case ResourceLabel::dephasing: return "dephasing";
    case ResourceLabel::twirling: return "twirling";
    default: return "custom";
  }
}

// An idempotent channel fixing exactly the free states. Validation checks
// idempotence by action on the d^2 spanning states (Kraus lists are not
// unique, so channels are compared by action).
class ResourceSpec {
 public:
  static ResourceSpec validate(KrausChannel destroyer, ResourceLabel label,
                               std::optional<GroupRepresentation> rep = std::nullopt,
                               const TolerancePolicy& tol = default_tolerance()) {
    for (const DensityMatrix& sigma : spanning_density_set(destroyer.dim(), tol)) {
      const DensityMatrix once = apply(destroyer, sigma, tol);
      const DensityMatrix twice = apply(destroyer, once, tol);
      if (max_abs_diff(twice.mat(), once.mat()) > tol.assert_atol) {
        throw std::invalid_argument("resource validate: destroyer is not idempotent within assert_atol");
      }
    }
    return ResourceSpec(std::move(destroyer), label, std::move(rep));
  }

  const KrausChannel& destroyer() const { return destroyer_; }
  ResourceLabel label() const { return label_; }
  int dim() const { return destroyer_.dim(); }
  // Present for twirling specs; used by the free-state cross-check.
  const std::optional<GroupRepresentation>& representation() const { return rep_; }

 private:
  ResourceSpec(KrausChannel destroyer, ResourceLabel label,
               std::optional<GroupRepresentation> rep)
      : destroyer_(std::move(destroyer)), label_(label), rep_(std::move(rep)) {}

  KrausChannel destroyer_;
  ResourceLabel label_;
  std::optional<GroupRepresentation> rep_;
};

// Dephasing in the computational basis: Kraus list {|i><i|}. Fixes exactly
// the diagonal states.
inline ResourceSpec dephasing_map(int dim, const TolerancePolicy& tol = default_tolerance()) {
  if (dim < 2) throw std::invalid_argument("dephasing_map: dim must be at least 2");
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) kraus.push_back(matrix_unit(dim, i, i));
  return ResourceSpec::validate(KrausChannel::validate(std::move(kraus), tol),
                                ResourceLabel::dephasing, std::nullopt, tol);
}

// Group average over a finite unitary representation: Kraus list
// {U_g / sqrt(|G|)}. The output commutes with every U_g.
inline ResourceSpec twirling_map(const GroupRepresentation& rep,
                                 const TolerancePolicy& tol = default_tolerance()) {
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(rep.order()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(rep.order()));
  for (const Matrix& u : rep.elements()) kraus.push_back(scale * u);
  return ResourceSpec::validate(KrausChannel::validate(std::move(kraus), tol),
                                ResourceLabel::twirling, rep, tol);
}

inline ResourceSpec custom_resource(KrausChannel destroyer,
                                    const TolerancePolicy& tol = default_tolerance()) {
  return ResourceSpec::validate(std::move(destroyer), ResourceLabel::custom, std::nullopt, tol);
}

struct FreeStateCheck {
  bool free = false;
  double residual_sq = 0.0;  // ||lambda(rho) - rho||_HS^2
  // Twirling cross-check: max_g ||U_g rho U_g^dag - rho||_HS^2.
  std::optional<double> max_group_residual_sq;
};

// rho is free iff lambda fixes it. For twirling specs the equivalent
// all-elements-invariant characterization is evaluated alongside.
inline FreeStateCheck is_free(const DensityMatrix& rho, const ResourceSpec& spec,
                              const TolerancePolicy& tol = default_tolerance()) {
  if (rho.dim() != spec.dim()) {
    throw std::invalid_argument("is_free: state and resource dimensions differ");
  }
  FreeStateCheck out;
  out.residual_sq = hs_norm_sq(Matrix(apply(spec.destroyer(), rho, tol).mat() - rho.mat()));
  out.free = out.residual_sq <= tol.assert_atol * tol.assert_atol;
  if (spec.representation()) {
    double worst = 0.0;
    for (const Matrix& u : spec.representation()->elements()) {
      worst = std::max(worst, hs_norm_sq(Matrix(u * rho.mat() * u.adjoint() - rho.mat())));
    }
    out.max_group_residual_sq = worst;
  }
  return out;
}

// Orthonormal (Hilbert-Schmidt) basis of {X : [X, A] = 0 for every A in ops},
// computed as the joint null space of the vectorized maps X -> AX - XA.
// Singular values below dim * unitary_atol are treated as zero.
inline std::vector<Matrix> commutant_basis(const std::vector<Matrix>& ops,
                                           const TolerancePolicy& tol = default_tolerance()) {
  if (ops.empty()) throw std::invalid_argument("commutant_basis: empty operator list");
  const Eigen::Index d = ops.front().rows();
  for (const Matrix& a : ops) {
    if (!is_square(a) || a.rows() != d) {
      throw std::invalid_argument("commutant_basis: operators must be square with a common dimension");
    }
  }
  const Eigen::Index d2 = d * d;
  Matrix stacked(static_cast<Eigen::Index>(ops.size()) * d2, d2);
  const Matrix eye = Matrix::Identity(d, d);
  for (std::size_t idx = 0; idx < ops.size(); ++idx) {
    // column-major vec: vec(AX - XA) = (I (x) A - A^T (x) I) vec(X)
    stacked.block(static_cast<Eigen::Index>(idx) * d2, 0, d2, d2) =
        kron(eye, ops[idx]) - kron(ops[idx].transpose(), eye);
  }
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const double cut = static_cast<double>(d) * tol.unitary_atol;
  std::vector<Matrix> basis;
  for (Eigen::Index i = 0; i < d2; ++i) {
    if (i >= svd.singularValues().size() || svd.singularValues()[i] < cut) {
      basis.push_back(Matrix(Eigen::Map<const Matrix>(svd.matrixV().col(i).data(), d, d)));
    }
  }
  return basis;
}

// Random channel whose every Kraus operator is a complex combination of the
// given basis, repaired to completeness with S^{-1/2} on the right. When the
// basis spans a *-algebra, S and S^{-1/2} stay inside it, so commutation
// with the algebra's commutant partners is preserved.
inline KrausChannel sample_channel_from_basis(const std::vector<Matrix>& basis, int n_kraus,
                                              Rng& rng,
                                              const TolerancePolicy& tol = default_tolerance()) {
  if (basis.empty()) {
    throw std::runtime_error("sample_channel_from_basis: commutant too small to sample from");
  }
  if (n_kraus < 1) {
    throw std::invalid_argument("sample_channel_from_basis: need at least one Kraus operator");
  }
  const Eigen::Index d = basis.front().rows();
  constexpr int max_retries = 8;
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<Matrix> raw;
    raw.reserve(static_cast<std::size_t>(n_kraus));
    for (int n = 0; n < n_kraus; ++n) {
      Matrix m = Matrix::Zero(d, d);
      for (const Matrix& b : basis) m += rng.complex_normal() * b;
      raw.push_back(std::move(m));
    }
    Matrix s = Matrix::Zero(d, d);
    for (const Matrix& m : raw) s += m.adjoint() * m;
    const HermitianEig eig_s = hermitian_eig(s, tol);
    if (eig_s.eigenvalues.minCoeff() <= tol.eig_clamp) continue;  // resample
    const Matrix s_inv_sqrt = spectral_apply(eig_s, [](double x) { return 1.0 / std::sqrt(x); });
    for (Matrix& m : raw) m = m * s_inv_sqrt;
    return KrausChannel::validate(std::move(raw), tol);
  }
  throw std::runtime_error("sample_channel_from_basis: normalization matrix stayed singular after retries");
}

// Commutant basis of the destroyer's Kraus set together with the adjoints;
// channels built from it satisfy the fixed-point conditions E^dag(K) = K,
// E^dag(K^dag K) = K^dag K, E^dag(K K^dag) = K K^dag for every destroyer
// Kraus operator K.
inline std::vector<Matrix> free_operation_basis(const ResourceSpec& spec,
                                                const TolerancePolicy& tol = default_tolerance()) {
  std::vector<Matrix> ops;
  ops.reserve(2 * spec.destroyer().kraus().size());
  for (const Matrix& k : spec.destroyer().kraus()) {
    ops.push_back(k);
    ops.push_back(k.adjoint());
  }
  return commutant_basis(ops, tol);
}

inline KrausChannel sample_free_operation(const ResourceSpec& spec, int n_kraus, Rng& rng,
                                          const TolerancePolicy& tol = default_tolerance()) {
  return sample_channel_from_basis(free_operation_basis(spec, tol), n_kraus, rng, tol);
}

inline KrausChannel sample_free_operation(const ResourceSpec& spec, int n_kraus, RngSeed seed,
                                          const TolerancePolicy& tol = default_tolerance()) {
  Rng rng(seed);
  return sample_free_operation(spec, n_kraus, rng, tol);
}

struct CommutationReport {
  double commutator_residual_sq = 0.0;     // max_n ||[M_n, K]||^2
  double fixed_point_residual_sq = 0.0;    // ||E^dag(K) - K||^2
  double quadratic_residual_sq = 0.0;      // ||E^dag(K^dag K) - K^dag K||^2
  double identity_residual = 0.0;          // HS norm of the sum-expansion mismatch
  bool commutes = false;
  bool fixes_operator = false;
  bool fixes_quadratic = false;
};

// Residuals of the commutation <-> fixed-point equivalence for a channel E
// and operator K, plus a verification of the exact operator identity
//   sum_n [M_n,K]^dag [M_n,K]
//     = K^dag K - E^dag(K^dag) K - K^dag E^dag(K) + E^dag(K^dag K),
// which holds for every trace-preserving E regardless of commutation.
inline CommutationReport check_lemma3(const KrausChannel& channel, const Matrix& k,
                                      const TolerancePolicy& tol = default_tolerance()) {
  if (!is_square(k) || k.rows() != channel.dim()) {
    throw std::invalid_argument("check_lemma3: operator dimension differs from channel");
  }
  CommutationReport report;
  const Eigen::Index d = k.rows();
  Matrix commutator_sum = Matrix::Zero(d, d);
  for (const Matrix& m : channel.kraus()) {
    const Matrix c = commutator(m, k);
    report.commutator_residual_sq = std::max(report.commutator_residual_sq, hs_norm_sq(c));
    commutator_sum += c.adjoint() * c;
  }
  const Matrix adj_k = apply_adjoint(channel, k);
  const Matrix adj_kdk = apply_adjoint(channel, Matrix(k.adjoint() * k));
  report.fixed_point_residual_sq = hs_norm_sq(Matrix(adj_k - k));
  report.quadratic_residual_sq = hs_norm_sq(Matrix(adj_kdk - k.adjoint() * k));

  const Matrix expansion =
      k.adjoint() * k - adj_k.adjoint() * k - k.adjoint() * adj_k + adj_kdk;
  report.identity_residual = std::sqrt(hs_norm_sq(Matrix(commutator_sum - expansion)));
  if (report.identity_residual > tol.assert_atol * std::max(1.0, hs_norm_sq(k))) {
    throw std::runtime_error("check_lemma3: sum-expansion identity failed; channel is not trace preserving");
  }

  const double cut = tol.assert_atol * tol.assert_atol;
  report.commutes = report.commutator_residual_sq <= cut;
  report.fixes_operator = report.fixed_point_residual_sq <= cut;
  report.fixes_quadratic = report.quadratic_residual_sq <= cut;
  return report;
}

}  // namespace skewinfo
