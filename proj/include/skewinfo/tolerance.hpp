#pragma once

//
// Global tolerance policy shared by every numerical check in the library.
//

#include <stdexcept>

namespace skewinfo {

struct TolerancePolicy {
  // Eigenvalues of PSD inputs in [-eig_clamp, 0) are rounding noise and are
  // clamped to 0; anything below -eig_clamp is a hard error.
  double eig_clamp = 1e-12;
  // Slack for property assertions and Hermiticity/trace checks.
  double assert_atol = 1e-9;
  // Slack for unitarity and Kraus completeness checks.
  double unitary_atol = 1e-8;
  // Relative threshold for the support-containment test in log branches.
  double support_rtol = 1e-10;

  void validate() const {
    if (!(eig_clamp > 0.0 && assert_atol > 0.0 && unitary_atol > 0.0 &&
          support_rtol > 0.0)) {
      throw std::invalid_argument("TolerancePolicy: all tolerances must be strictly positive");
    }
  }
};

inline const TolerancePolicy& default_tolerance() {
  static const TolerancePolicy policy{};
  return policy;
}

}  // namespace skewinfo
