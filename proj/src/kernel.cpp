#include "mhrev/kernel.hpp"

#include <Eigen/LU>
#include <cmath>
#include <string>
#include <vector>

namespace mhrev {

namespace {

// Reachability sweep over the positive-entry adjacency structure.
std::vector<bool> reachable_from(const Matrix& P, int start, bool transpose) {
  const int n = static_cast<int>(P.rows());
  std::vector<bool> seen(n, false);
  std::vector<int> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (int y = 0; y < n; ++y) {
      const double w = transpose ? P(y, x) : P(x, y);
      if (w > 0.0 && !seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

ProbabilityVector stationary_by_power_iteration(const Matrix& P) {
  const int n = static_cast<int>(P.rows());
  Vector x = Vector::Constant(n, 1.0 / n);
  for (int iter = 0; iter < 200000; ++iter) {
    Vector next = P.transpose() * x;
    next /= next.sum();
    const double delta = (next - x).cwiseAbs().maxCoeff();
    x = next;
    if (delta < 1e-15) break;
  }
  return ProbabilityVector(x);
}

}  // namespace

bool is_irreducible(const Matrix& P) {
  const auto fwd = reachable_from(P, 0, false);
  const auto bwd = reachable_from(P, 0, true);
  for (size_t i = 0; i < fwd.size(); ++i) {
    if (!fwd[i] || !bwd[i]) return false;
  }
  return true;
}

double stationarity_residual(const Matrix& P, const ProbabilityVector& pi) {
  const Vector& w = pi.values();
  return ((P.transpose() * w) - w).cwiseAbs().maxCoeff();
}

ProbabilityVector stationary_distribution(const StochasticKernel& P) {
  const Matrix& M = P.matrix();
  const int n = P.size();
  if (!is_irreducible(M)) {
    throw ReducibleChain("stationary_distribution: chain is not irreducible");
  }
  if (n > 2000) {
    return stationary_by_power_iteration(M);
  }
  // (P^T - I) x = 0 with the first equation replaced by sum(x) = 1.
  Matrix A = M.transpose() - Matrix::Identity(n, n);
  A.row(0).setOnes();
  Vector b = Vector::Zero(n);
  b[0] = 1.0;
  Vector x = A.partialPivLu().solve(b);
  x /= x.sum();
  if (x.minCoeff() <= 1e-14) {
    throw NonPositiveStationary("stationary_distribution: solved entry <= 1e-14");
  }
  ProbabilityVector pi{x};
  if (stationarity_residual(M, pi) > kSolvedTol) {
    throw NonPositiveStationary("stationary_distribution: residual above 1e-10");
  }
  return pi;
}

Matrix pi_adjoint(const Matrix& K, const ProbabilityVector& pi) {
  const int n = static_cast<int>(K.rows());
  Matrix R(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      R(x, y) = pi[y] * K(y, x) / pi[x];
    }
  }
  return R;
}

StochasticKernel time_reversal(const StochasticKernel& P, const ProbabilityVector& pi) {
  if (pi.size() != P.size()) {
    throw DimensionMismatch("time_reversal: pi and P sizes differ");
  }
  if (stationarity_residual(P.matrix(), pi) > kSolvedTol) {
    throw NotStationary("time_reversal: pi is not stationary for P");
  }
  return StochasticKernel(pi_adjoint(P.matrix(), pi), kSolvedTol);
}

StochasticKernel kernel_power(const StochasticKernel& P, int n, bool* renormalized) {
  if (n < 1) {
    throw BadParams("kernel_power: n must be >= 1");
  }
  if (renormalized) *renormalized = false;
  Matrix Pk = P.matrix();
  for (int k = 2; k <= n; ++k) {
    Pk = (Pk * P.matrix()).eval();
  }
  for (int x = 0; x < Pk.rows(); ++x) {
    const double s = Pk.row(x).sum();
    if (std::abs(s - 1.0) > kStructuralTol) {
      Pk.row(x) /= s;
      if (renormalized) *renormalized = true;
    }
  }
  return StochasticKernel(std::move(Pk), kSolvedTol);
}

bool is_reversible(const StochasticKernel& P, const ProbabilityVector& pi, double tol) {
  const Matrix& M = P.matrix();
  const int n = P.size();
  double worst = 0.0;
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      worst = std::max(worst, std::abs(pi[x] * M(x, y) - pi[y] * M(y, x)));
    }
  }
  return worst <= tol;
}

double weighted_inner_product(const Vector& f, const Vector& g, const ProbabilityVector& pi) {
  if (f.size() != g.size() || f.size() != pi.size()) {
    throw DimensionMismatch("weighted_inner_product: dimensions differ");
  }
  return (f.array() * g.array() * pi.values().array()).sum();
}

Matrix stationary_projector(const ProbabilityVector& pi) {
  const int n = pi.size();
  Matrix Pi(n, n);
  for (int x = 0; x < n; ++x) Pi.row(x) = pi.values().transpose();
  return Pi;
}

}  // namespace mhrev
