#pragma once

//
// Seeded, substream-capable random source.
//
// Engine: mt19937_64 seeded through a splitmix64 hash of (seed, stream).
// Uniforms come from the top 53 bits, normals from Box-Muller, so the draw
// sequence is identical on every conforming standard library (the
// <random> distribution classes are implementation-defined and are avoided).
//

#include <cmath>
#include <cstdint>
#include <random>

#include "skewinfo/matrix.hpp"

namespace skewinfo {

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;  // substream index; (seed, stream) pins the draws
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class Rng {
 public:
  explicit Rng(RngSeed s)
      : engine_(detail::mix64(s.seed ^ detail::mix64(s.stream + 0x632be59bd9b4e019ULL))) {}
  Rng(std::uint64_t seed, std::uint64_t stream = 0) : Rng(RngSeed{seed, stream}) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Matrix of independent standard complex Gaussians.
inline Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

inline Matrix random_hermitian(int dim, Rng& rng) {
  Matrix g = ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal phases
// folded back into Q.
inline Matrix random_unitary(int dim, Rng& rng) {
  Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double mag = std::abs(d);
    q.col(j) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace skewinfo
