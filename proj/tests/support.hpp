#pragma once

#include <doctest.h>

#include <random>

#include "mhrev/kernel.hpp"
#include "mhrev/types.hpp"

namespace mhrev::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eed5eedULL) {
  return std::mt19937_64{seed};
}

/// Random irreducible chain: sparse random mass plus a weak cycle that keeps
/// every state reachable.
inline StochasticKernel random_chain(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix P = Matrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (unif(rng) < 0.5) P(x, y) = unif(rng);
    }
    P(x, (x + 1) % n) += 0.05;
    P.row(x) /= P.row(x).sum();
  }
  return StochasticKernel(std::move(P));
}

inline StochasticKernel lazy_version(const StochasticKernel& P) {
  const int n = P.size();
  return StochasticKernel(0.5 * (P.matrix() + Matrix::Identity(n, n)));
}

inline Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector f(n);
  for (int i = 0; i < n; ++i) f[i] = gauss(rng);
  return f;
}

/// pi-mean-zero random test function.
inline Vector random_centered(int n, const ProbabilityVector& pi, std::mt19937_64& rng) {
  Vector f = random_vector(n, rng);
  return f.array() - (f.array() * pi.values().array()).sum();
}

inline void check_matrix_near(const Matrix& a, const Matrix& b, double tol) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  CHECK((a - b).cwiseAbs().maxCoeff() <= tol);
}

}  // namespace mhrev::testing
