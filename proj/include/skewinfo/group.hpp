#pragma once

//
// Finite-group unitary representations (as explicit matrix lists) and the two
// built-in cyclic builders: the shift representation of Z_N on dimension N
// and the diagonal phase representation diag(omega^{jk}) on any dimension.
//

#include <cmath>
#include <utility>
#include <vector>

#include "skewinfo/channel.hpp"
#include "skewinfo/matrix.hpp"
#include "skewinfo/tolerance.hpp"

namespace skewinfo {

class GroupRepresentation {
 public:
  // Certifies: nonempty list of unitaries of a common dimension that contains
  // the identity and is closed under products (every pairwise product matches
  // a listed element within unitary_atol). Global phases are not quotiented.
  static GroupRepresentation validate(std::vector<Matrix> elements,
                                      const TolerancePolicy& tol = default_tolerance()) {
    if (elements.empty()) {
      throw std::invalid_argument("representation validate: empty element list");
    }
    const Eigen::Index d = elements.front().rows();
    for (const Matrix& u : elements) {
      if (!is_square(u) || u.rows() != d) {
        throw std::invalid_argument("representation validate: elements must be square with a common dimension");
      }
      if (!all_finite(u)) {
        throw std::invalid_argument("representation validate: non-finite entries");
      }
      if (!is_unitary(u, tol.unitary_atol)) {
        throw std::invalid_argument("representation validate: element is not unitary within unitary_atol");
      }
    }
    const Matrix eye = Matrix::Identity(d, d);
    if (!contains(elements, eye, tol.unitary_atol)) {
      throw std::invalid_argument("representation validate: identity element missing");
    }
    for (const Matrix& g : elements) {
      for (const Matrix& h : elements) {
        if (!contains(elements, Matrix(g * h), tol.unitary_atol)) {
          throw std::invalid_argument("representation validate: element list is not closed under products");
        }
      }
    }
    return GroupRepresentation(std::move(elements));
  }

  int dim() const { return static_cast<int>(elements_.front().rows()); }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Matrix>& elements() const { return elements_; }

 private:
  static bool contains(const std::vector<Matrix>& elements, const Matrix& candidate,
                       double atol) {
    for (const Matrix& u : elements) {
      if (max_abs(Matrix(u - candidate)) <= atol) return true;
    }
    return false;
  }

  explicit GroupRepresentation(std::vector<Matrix> elements) : elements_(std::move(elements)) {}
  std::vector<Matrix> elements_;
};

// Z_N acting on dimension N by cyclic shifts |k> -> |k + j mod N>.
inline GroupRepresentation cyclic_shift_representation(
    int n, const TolerancePolicy& tol = default_tolerance()) {
  if (n < 1) throw std::invalid_argument("cyclic_shift_representation: order must be positive");
  std::vector<Matrix> elements;
  elements.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) elements.push_back(shift_unitary(j, n));
  return GroupRepresentation::validate(std::move(elements), tol);
}

// Z_N acting on dimension dim by diagonal phases:
// element j is diag(omega^{0j}, omega^{1j}, ..., omega^{(dim-1)j}),
// omega = exp(2 pi i / N). Valid for any dim and N.
inline GroupRepresentation cyclic_phase_representation(
    int dim, int n, const TolerancePolicy& tol = default_tolerance()) {
  if (dim < 1) throw std::invalid_argument("cyclic_phase_representation: dim must be positive");
  if (n < 1) throw std::invalid_argument("cyclic_phase_representation: order must be positive");
  std::vector<Matrix> elements;
  elements.reserve(static_cast<std::size_t>(n));
  const double step = 2.0 * 3.14159265358979323846 / static_cast<double>(n);
  for (int j = 0; j < n; ++j) {
    Matrix u = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
      // omega^{jk} with the exponent reduced mod N to keep phases exact-ish
      const int e = static_cast<int>((static_cast<long long>(j) * k) % n);
      u(k, k) = std::polar(1.0, step * static_cast<double>(e));
    }
    elements.push_back(std::move(u));
  }
  return GroupRepresentation::validate(std::move(elements), tol);
}

}  // namespace skewinfo
