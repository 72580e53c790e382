#pragma once

//
// The measure family.
//
// skew_information(rho, K)   = ||[sqrt(rho), K]||^2, evaluated through the
//                              trace formula Tr(rho K^dag K) + Tr(rho K K^dag)
//                              - 2 Tr(sqrt(rho) K^dag sqrt(rho) K).
// skew_information(rho, ch)  = sum over the Kraus operators.
// g_p(x)                     = (x - x^p)/(p(1-p)) for p != 1, x log x at p = 1.
// j_p(K, A, B)               = branch trace formulas for p in (0,1)u(1,2),
//                              p = 1 and p = 2 (natural logs throughout).
// j_p_spectral(K, A, B)      = independent route: sum_ij g_p(a_i/b_j) b_j
//                              |<a_i|K|b_j>|^2 over the eigenpairs of A and B.
// i_p(rho, channel)          = sum_i j_p(K_i, rho, rho); singular rho is
//                              regularized with delta (default 1e-8) instead
//                              of rejected.
// relative_entropy(A, B)     = Tr(A log A - A log B) with support checking;
//                              support violation yields +infinity.
//

#include <cmath>
#include <limits>
#include <stdexcept>

#include "skewinfo/channel.hpp"
#include "skewinfo/density.hpp"
#include "skewinfo/eig.hpp"
#include "skewinfo/matrix.hpp"
#include "skewinfo/tolerance.hpp"

namespace skewinfo {

// Order p in (0, 2] selecting the divergence branch. Values within 1e-12 of
// a branch point snap to it.
class OrderParameter {
 public:
  enum class Branch { power, log, inverse };
  static constexpr double snap_window = 1e-12;

  explicit OrderParameter(double p) : p_(p) {
    if (std::abs(p_ - 1.0) <= snap_window) p_ = 1.0;
    if (std::abs(p_ - 2.0) <= snap_window) p_ = 2.0;
    if (!(p_ > 0.0) || p_ > 2.0) {
      throw std::invalid_argument("OrderParameter: p must lie in (0, 2]");
    }
  }

  double value() const { return p_; }
  Branch branch() const {
    if (p_ == 1.0) return Branch::log;
    if (p_ == 2.0) return Branch::inverse;
    return Branch::power;
  }

 private:
  double p_;
};

struct MeasureValue {
  double value = 0.0;
  OrderParameter::Branch branch = OrderParameter::Branch::power;
  bool infinite = false;  // only the log branch can diverge (support violation)
};

// Scalar kernel of the quasi-entropy family; natural logarithm.
inline double g_p(double x, OrderParameter p) {
  if (!(x > 0.0)) throw std::invalid_argument("g_p: x must be strictly positive");
  if (p.branch() == OrderParameter::Branch::log) return x * std::log(x);
  const double q = p.value();
  return (x - std::pow(x, q)) / (q * (1.0 - q));
}

namespace detail {

// Shared skew-information term with a precomputed sqrt(rho).
inline double skew_term(const Matrix& rho, const Matrix& sqrt_rho, const Matrix& k,
                        const TolerancePolicy& tol) {
  const Complex t1 = (rho * k.adjoint() * k).trace();
  const Complex t2 = (rho * k * k.adjoint()).trace();
  const Complex t3 = (sqrt_rho * k.adjoint() * sqrt_rho * k).trace();
  const double imag = std::abs(t1.imag()) + std::abs(t2.imag()) + std::abs(t3.imag());
  if (imag > tol.assert_atol) {
    throw std::runtime_error("skew_information: trace expression has a non-real residue");
  }
  double v = t1.real() + t2.real() - 2.0 * t3.real();
  if (v < -tol.assert_atol) {
    throw std::runtime_error("skew_information: value negative beyond assert_atol");
  }
  return v < 0.0 ? 0.0 : v;
}

inline void require_strictly_positive(const HermitianEig& eig, const char* what,
                                      const TolerancePolicy& tol) {
  if (eig.eigenvalues.minCoeff() <= tol.eig_clamp) {
    throw std::domain_error(std::string("j_p: ") + what +
                            " must be strictly positive (regularize singular inputs first)");
  }
}

inline double real_trace(const Complex& t, const TolerancePolicy& tol, const char* what) {
  if (std::abs(t.imag()) > tol.assert_atol) {
    throw std::runtime_error(std::string(what) + ": trace expression has a non-real residue");
  }
  return t.real();
}

// Branch trace formulas evaluated from precomputed eigensystems of A and B.
inline double j_p_eval(const Matrix& k, const Matrix& a, const HermitianEig& eig_a,
                       const Matrix& b, const HermitianEig& eig_b, OrderParameter p,
                       const TolerancePolicy& tol) {
  switch (p.branch()) {
    case OrderParameter::Branch::log: {
      const Matrix a_log_a = spectral_apply(eig_a, [](double x) { return x * std::log(x); });
      const Matrix log_b = spectral_apply(eig_b, [](double x) { return std::log(x); });
      const Complex t = (k * k.adjoint() * a_log_a).trace() - (k.adjoint() * a * k * log_b).trace();
      return real_trace(t, tol, "j_p");
    }
    case OrderParameter::Branch::inverse: {
      const Matrix b_inv = spectral_apply(eig_b, [](double x) { return 1.0 / x; });
      const Complex t = (k.adjoint() * a * k).trace() - (a * k * b_inv * k.adjoint() * a).trace();
      return -0.5 * real_trace(t, tol, "j_p");
    }
    case OrderParameter::Branch::power:
    default: {
      const double q = p.value();
      const Matrix a_pow = spectral_apply(eig_a, [q](double x) { return std::pow(x, q); });
      const Matrix b_pow = spectral_apply(eig_b, [q](double x) { return std::pow(x, 1.0 - q); });
      const Complex t = (k.adjoint() * a * k).trace() - (k.adjoint() * a_pow * k * b_pow).trace();
      return real_trace(t, tol, "j_p") / (q * (1.0 - q));
    }
  }
}

// Spectral route: sum_ij g_p(a_i/b_j) b_j |<a_i|K|b_j>|^2.
inline double j_p_spectral_eval(const Matrix& k, const HermitianEig& eig_a,
                                const HermitianEig& eig_b, OrderParameter p) {
  const Matrix w = eig_a.eigenvectors.adjoint() * k * eig_b.eigenvectors;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig_a.eigenvalues.size(); ++i) {
    for (Eigen::Index j = 0; j < eig_b.eigenvalues.size(); ++j) {
      const double a = eig_a.eigenvalues[i];
      const double b = eig_b.eigenvalues[j];
      sum += g_p(a / b, p) * b * std::norm(w(i, j));
    }
  }
  return sum;
}

}  // namespace detail

inline double skew_information(const DensityMatrix& rho, const Matrix& k,
                               const TolerancePolicy& tol = default_tolerance()) {
  if (!is_square(k) || k.rows() != rho.dim()) {
    throw std::invalid_argument("skew_information: operator dimension differs from state");
  }
  const Matrix sqrt_rho = matrix_sqrt(rho.mat(), tol);
  return detail::skew_term(rho.mat(), sqrt_rho, k, tol);
}

// State-channel measure: the sum of skew informations over a Kraus list.
// Invariant under Kraus remixing.
inline double skew_information(const DensityMatrix& rho, const KrausChannel& channel,
                               const TolerancePolicy& tol = default_tolerance()) {
  if (channel.dim() != rho.dim()) {
    throw std::invalid_argument("skew_information: channel dimension differs from state");
  }
  const Matrix sqrt_rho = matrix_sqrt(rho.mat(), tol);
  double sum = 0.0;
  for (const Matrix& k : channel.kraus()) sum += detail::skew_term(rho.mat(), sqrt_rho, k, tol);
  return sum;
}

inline MeasureValue j_p(const Matrix& k, const DensityMatrix& a, const DensityMatrix& b,
                        OrderParameter p, const TolerancePolicy& tol = default_tolerance()) {
  if (!is_square(k) || k.rows() != a.dim() || a.dim() != b.dim()) {
    throw std::invalid_argument("j_p: dimension mismatch");
  }
  const HermitianEig eig_a = hermitian_eig(a.mat(), tol);
  const HermitianEig eig_b = hermitian_eig(b.mat(), tol);
  detail::require_strictly_positive(eig_a, "A", tol);
  detail::require_strictly_positive(eig_b, "B", tol);
  return {detail::j_p_eval(k, a.mat(), eig_a, b.mat(), eig_b, p, tol), p.branch(), false};
}

inline MeasureValue j_p_spectral(const Matrix& k, const DensityMatrix& a,
                                 const DensityMatrix& b, OrderParameter p,
                                 const TolerancePolicy& tol = default_tolerance()) {
  if (!is_square(k) || k.rows() != a.dim() || a.dim() != b.dim()) {
    throw std::invalid_argument("j_p_spectral: dimension mismatch");
  }
  const HermitianEig eig_a = hermitian_eig(a.mat(), tol);
  const HermitianEig eig_b = hermitian_eig(b.mat(), tol);
  detail::require_strictly_positive(eig_a, "A", tol);
  detail::require_strictly_positive(eig_b, "B", tol);
  return {detail::j_p_spectral_eval(k, eig_a, eig_b, p), p.branch(), false};
}

namespace detail {

enum class JpRoute { trace, spectral };

template <class KrausRange>
double i_p_impl(const DensityMatrix& rho, const KrausRange& kraus, OrderParameter p,
                const TolerancePolicy& tol, double delta, JpRoute route) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("i_p: regularization delta must lie in (0, 1)");
  }
  DensityMatrix state = rho;
  HermitianEig eig = hermitian_eig(state.mat(), tol);
  if (eig.eigenvalues.minCoeff() <= tol.eig_clamp) {
    state = regularize(state, delta, tol);
    eig = hermitian_eig(state.mat(), tol);
  }
  double sum = 0.0;
  for (const Matrix& k : kraus) {
    if (!is_square(k) || k.rows() != state.dim()) {
      throw std::invalid_argument("i_p: operator dimension differs from state");
    }
    sum += route == JpRoute::trace
               ? j_p_eval(k, state.mat(), eig, state.mat(), eig, p, tol)
               : j_p_spectral_eval(k, eig, eig, p);
  }
  return sum;
}

}  // namespace detail

// I_p of a state and channel: sum_i J_p(K_i, rho, rho). Invariant under Kraus
// remixing. Singular rho is regularized with delta instead of rejected.
inline double i_p(const DensityMatrix& rho, const KrausChannel& channel, OrderParameter p,
                  const TolerancePolicy& tol = default_tolerance(), double delta = 1e-8) {
  if (channel.dim() != rho.dim()) {
    throw std::invalid_argument("i_p: channel dimension differs from state");
  }
  return detail::i_p_impl(rho, channel.kraus(), p, tol, delta, detail::JpRoute::trace);
}

// Single-operator form, J_p(K, rho, rho) with the same regularization policy.
inline double i_p(const DensityMatrix& rho, const Matrix& k, OrderParameter p,
                  const TolerancePolicy& tol = default_tolerance(), double delta = 1e-8) {
  const Matrix ops[] = {k};
  return detail::i_p_impl(rho, ops, p, tol, delta, detail::JpRoute::trace);
}

// Same measures through the independent spectral route (used by the search's
// two-stage counterexample confirmation).
inline double i_p_spectral(const DensityMatrix& rho, const KrausChannel& channel,
                           OrderParameter p, const TolerancePolicy& tol = default_tolerance(),
                           double delta = 1e-8) {
  if (channel.dim() != rho.dim()) {
    throw std::invalid_argument("i_p_spectral: channel dimension differs from state");
  }
  return detail::i_p_impl(rho, channel.kraus(), p, tol, delta, detail::JpRoute::spectral);
}

inline double i_p_spectral(const DensityMatrix& rho, const Matrix& k, OrderParameter p,
                           const TolerancePolicy& tol = default_tolerance(), double delta = 1e-8) {
  const Matrix ops[] = {k};
  return detail::i_p_impl(rho, ops, p, tol, delta, detail::JpRoute::spectral);
}

// Umegaki relative entropy Tr(A log A - A log B) in nats, the K = I, p = 1
// case of j_p extended to singular inputs: finite iff the support of A is
// contained in the support of B (within support_rtol), +infinity otherwise.
inline MeasureValue relative_entropy(const DensityMatrix& a, const DensityMatrix& b,
                                     const TolerancePolicy& tol = default_tolerance()) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  HermitianEig eig_a = hermitian_eig(a.mat(), tol);
  HermitianEig eig_b = hermitian_eig(b.mat(), tol);
  eig_a.eigenvalues = clamp_psd_spectrum(eig_a.eigenvalues, tol);
  eig_b.eigenvalues = clamp_psd_spectrum(eig_b.eigenvalues, tol);

  const double b_max = eig_b.eigenvalues.maxCoeff();
  const double kernel_cut = tol.support_rtol * b_max;

  // Mass of A on the kernel of B decides the support containment.
  double kernel_mass = 0.0;
  for (Eigen::Index j = 0; j < eig_b.eigenvalues.size(); ++j) {
    if (eig_b.eigenvalues[j] <= kernel_cut) {
      const Eigen::VectorXcd v = eig_b.eigenvectors.col(j);
      kernel_mass += (v.adjoint() * a.mat() * v)(0, 0).real();
    }
  }
  if (kernel_mass > tol.support_rtol) {
    return {std::numeric_limits<double>::infinity(), OrderParameter::Branch::log, true};
  }

  double value = 0.0;
  for (Eigen::Index i = 0; i < eig_a.eigenvalues.size(); ++i) {
    const double w = eig_a.eigenvalues[i];
    if (w > 0.0) value += w * std::log(w);
  }
  for (Eigen::Index j = 0; j < eig_b.eigenvalues.size(); ++j) {
    const double w = eig_b.eigenvalues[j];
    if (w > kernel_cut) {
      const Eigen::VectorXcd v = eig_b.eigenvectors.col(j);
      value -= (v.adjoint() * a.mat() * v)(0, 0).real() * std::log(w);
    }
  }
  return {value, OrderParameter::Branch::log, false};
}

}  // namespace skewinfo
