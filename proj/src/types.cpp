#include "mhrev/types.hpp"

#include <cmath>
#include <string>

namespace mhrev {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw InvariantViolation(std::string(what) + ": matrix must be square and non-empty");
  }
}

}  // namespace

ProbabilityVector::ProbabilityVector(Vector weights, double tol) : weights_(std::move(weights)) {
  if (weights_.size() == 0) {
    throw InvariantViolation("ProbabilityVector: empty");
  }
  if (weights_.minCoeff() <= 0.0) {
    throw InvariantViolation("ProbabilityVector: entries must be strictly positive");
  }
  if (std::abs(weights_.sum() - 1.0) > tol) {
    throw InvariantViolation("ProbabilityVector: entries must sum to 1, got " +
                             std::to_string(weights_.sum()));
  }
}

StochasticKernel::StochasticKernel(Matrix entries, double tol) : entries_(std::move(entries)) {
  require_square(entries_, "StochasticKernel");
  if (entries_.minCoeff() < -tol) {
    throw InvariantViolation("StochasticKernel: entries must be nonnegative");
  }
  for (int x = 0; x < entries_.rows(); ++x) {
    if (std::abs(entries_.row(x).sum() - 1.0) > tol) {
      throw InvariantViolation("StochasticKernel: row " + std::to_string(x) +
                               " sums to " + std::to_string(entries_.row(x).sum()));
    }
  }
}

SignedKernel::SignedKernel(Matrix entries, double tol) : entries_(std::move(entries)) {
  require_square(entries_, "SignedKernel");
  const int n = static_cast<int>(entries_.rows());
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x != y && entries_(x, y) < -tol) {
        throw InvariantViolation("SignedKernel: off-diagonal entry (" + std::to_string(x) +
                                 "," + std::to_string(y) + ") is negative");
      }
    }
    if (entries_(x, x) < -1.0 - tol) {
      throw InvariantViolation("SignedKernel: diagonal entry " + std::to_string(x) +
                               " below -1");
    }
    if (std::abs(entries_.row(x).sum() - 1.0) > tol) {
      throw InvariantViolation("SignedKernel: row " + std::to_string(x) + " sums to " +
                               std::to_string(entries_.row(x).sum()));
    }
  }
}

RateGenerator::RateGenerator(Matrix entries, double tol) : entries_(std::move(entries)) {
  require_square(entries_, "RateGenerator");
  const int n = static_cast<int>(entries_.rows());
  // Row-sum tolerance scales with the rate magnitude; vortex rates 1/pi(i)
  // can be large.
  for (int x = 0; x < n; ++x) {
    const double scale = std::max(1.0, entries_.row(x).cwiseAbs().maxCoeff());
    for (int y = 0; y < n; ++y) {
      if (x != y && entries_(x, y) < -tol * scale) {
        throw InvariantViolation("RateGenerator: off-diagonal entry (" + std::to_string(x) +
                                 "," + std::to_string(y) + ") is negative");
      }
    }
    if (std::abs(entries_.row(x).sum()) > tol * scale) {
      throw InvariantViolation("RateGenerator: row " + std::to_string(x) + " sums to " +
                               std::to_string(entries_.row(x).sum()));
    }
  }
}

}  // namespace mhrev
