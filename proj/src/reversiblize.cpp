#include "mhrev/reversiblize.hpp"

#include <cmath>

#include "mhrev/kernel.hpp"

namespace mhrev {

namespace {

constexpr double kTieTol = 1e-14;

void require_stationary(const Matrix& P, const ProbabilityVector& pi, const char* who) {
  if (pi.size() != static_cast<int>(P.rows())) {
    throw DimensionMismatch(std::string(who) + ": pi and kernel sizes differ");
  }
  if (stationarity_residual(P, pi) > kSolvedTol) {
    throw NotStationary(std::string(who) + ": pi is not stationary");
  }
}

// Raw M1 matrix; diagonal set to 1 - offdiagonal row sum for exact
// stochasticity.
Matrix mh_first_matrix(const Matrix& P, const ProbabilityVector& pi) {
  const int n = static_cast<int>(P.rows());
  const Matrix Ps = pi_adjoint(P, pi);
  Matrix M1 = P.cwiseMin(Ps);
  for (int x = 0; x < n; ++x) {
    M1(x, x) = 0.0;
    M1(x, x) = 1.0 - M1.row(x).sum();
  }
  return M1;
}

}  // namespace

StochasticKernel mh_first(const StochasticKernel& P, const ProbabilityVector& pi) {
  require_stationary(P.matrix(), pi, "mh_first");
  return StochasticKernel(mh_first_matrix(P.matrix(), pi), kSolvedTol);
}

SignedKernel mh_second(const StochasticKernel& P, const ProbabilityVector& pi) {
  require_stationary(P.matrix(), pi, "mh_second");
  const Matrix& Pm = P.matrix();
  const Matrix Ps = pi_adjoint(Pm, pi);
  const Matrix M1 = mh_first_matrix(Pm, pi);
  // m2 := p + p* - m1 keeps the Lemma identity exact in floating point.
  return SignedKernel(Pm + Ps - M1, kSolvedTol);
}

std::vector<int> acceptance_region(const StochasticKernel& P, const ProbabilityVector& pi,
                                   int x) {
  require_stationary(P.matrix(), pi, "acceptance_region");
  const int n = P.size();
  if (x < 0 || x >= n) {
    throw BadParams("acceptance_region: state out of range");
  }
  const Matrix Ps = pi_adjoint(P.matrix(), pi);
  std::vector<int> region;
  for (int y = 0; y < n; ++y) {
    if (y == x) continue;  // alpha_1(x,x) = 1 by convention
    if (P.matrix()(x, y) - Ps(x, y) > kTieTol) {
      region.push_back(y);
    }
  }
  return region;
}

StochasticKernel additive_reversiblization(const StochasticKernel& P,
                                           const ProbabilityVector& pi) {
  require_stationary(P.matrix(), pi, "additive_reversiblization");
  return StochasticKernel(0.5 * (P.matrix() + pi_adjoint(P.matrix(), pi)), kSolvedTol);
}

StochasticKernel multiplicative_reversiblization(const StochasticKernel& P,
                                                 const ProbabilityVector& pi, int k) {
  if (k < 1) {
    throw BadParams("multiplicative_reversiblization: k must be >= 1");
  }
  require_stationary(P.matrix(), pi, "multiplicative_reversiblization");
  const Matrix Pk = k == 1 ? P.matrix() : kernel_power(P, k).matrix();
  return StochasticKernel(pi_adjoint(Pk, pi) * Pk, kSolvedTol);
}

std::pair<RateGenerator, RateGenerator> generator_mh_pair(const RateGenerator& GBD,
                                                          const RateGenerator& V,
                                                          const ProbabilityVector& pi) {
  const int n = GBD.size();
  if (V.size() != n || pi.size() != n) {
    throw DimensionMismatch("generator_mh_pair: sizes differ");
  }
  const Matrix G = GBD.matrix() + V.matrix();
  const Vector piG = G.transpose() * pi.values();
  const double scale = std::max(1.0, G.cwiseAbs().maxCoeff());
  if (piG.cwiseAbs().maxCoeff() > kSolvedTol * scale) {
    throw NotStationary("generator_mh_pair: pi is not stationary for GBD + V");
  }
  // Detailed balance of the base chain: pi(x) GBD(x,y) = pi(y) GBD(y,x).
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (std::abs(pi[x] * GBD.matrix()(x, y) - pi[y] * GBD.matrix()(y, x)) > kSolvedTol * scale) {
        throw NotReversibleBase("generator_mh_pair: GBD fails detailed balance");
      }
    }
  }
  const Matrix Vstar = pi_adjoint(V.matrix(), pi);
  return {RateGenerator(GBD.matrix(), kSolvedTol),
          RateGenerator(GBD.matrix() + V.matrix() + Vstar, kSolvedTol)};
}

}  // namespace mhrev
