#pragma once

#include <Eigen/Dense>

#include "mhrev/errors.hpp"

namespace mhrev {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Absolute tolerance for structural invariants (row sums, symmetry of
/// constructed kernels).
inline constexpr double kStructuralTol = 1e-12;
/// Absolute tolerance for solved quantities (stationary residuals,
/// eigenvalue-based checks).
inline constexpr double kSolvedTol = 1e-10;

/// Strictly positive probability distribution over a finite state space.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(Vector weights, double tol = kStructuralTol);

  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  const Vector& values() const { return weights_; }
  double min() const { return weights_.minCoeff(); }

 private:
  Vector weights_;
};

/// Row-stochastic transition matrix of a discrete-time Markov chain.
class StochasticKernel {
 public:
  explicit StochasticKernel(Matrix entries, double tol = kStructuralTol);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int x, int y) const { return entries_(x, y); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Square matrix with unit row sums and nonnegative off-diagonal entries.
/// The diagonal may be negative but never below -1; this is the home of the
/// second MH kernel.
class SignedKernel {
 public:
  explicit SignedKernel(Matrix entries, double tol = kStructuralTol);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int x, int y) const { return entries_(x, y); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Continuous-time rate matrix: zero row sums, nonnegative off-diagonal.
class RateGenerator {
 public:
  explicit RateGenerator(Matrix entries, double tol = kStructuralTol);

  int size() const { return static_cast<int>(entries_.rows()); }
  double operator()(int x, int y) const { return entries_(x, y); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

}  // namespace mhrev
