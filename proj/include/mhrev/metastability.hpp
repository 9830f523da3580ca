#pragma once

#include <utility>
#include <vector>

#include "mhrev/types.hpp"

namespace mhrev {

/// Disjoint non-empty blocks covering the whole state space.
struct Partition {
  std::vector<std::vector<int>> blocks;
};

/// Throws InvariantViolation unless `D` is a valid partition of n states.
void validate_partition(const Partition& D, int n);

/// Flow Q(A,B) = <P 1_A, 1_B>_pi / <1_A, 1_A>_pi, and 0 when pi(A) = 0.
double flow(const StochasticKernel& P, const ProbabilityVector& pi,
            const std::vector<int>& A, const std::vector<int>& B);

/// m(D) = sum_i Q(A_i, A_i).
double partition_metastability(const StochasticKernel& P, const ProbabilityVector& pi,
                               const Partition& D);

/// Spectral sandwich on m(D):
///   1 + sum_{j>=2} rho_j lambda_j^{(2)} + c  <=  m(D)  <=  1 + sum_{j>=2} lambda_j^{(1)},
/// where rho_j is the squared pi-projection of the j-th M2 eigenvector onto
/// the span of the block indicators and c = a sum_{j>=2} (1 - rho_j) with `a`
/// the floor of the non-dominant M2 spectrum.
struct MetastabilityBounds {
  double lower = 0.0;
  double upper = 0.0;
  double metastability = 0.0;
  std::vector<double> rho;  ///< rho_j for j = 2..|D| (index 0 is rho_2)
  double a = 0.0;           ///< band floor used in c
  double c = 0.0;
};

MetastabilityBounds metastability_bounds(const StochasticKernel& P, const ProbabilityVector& pi,
                                         const Partition& D);

/// Leakage l(A,t) = ||1_A - P^t 1_A||_{L^1(pi)} / (2 pi(A)(1 - pi(A))).
double leakage(const StochasticKernel& P, const ProbabilityVector& pi, const std::vector<int>& A,
               int t);

/// Leakage sandwich for the bipartition {A, A^c}:
///   1 - lambda_2^{(1)}(P^t) <= l(A,t) <= 1 - gamma_A^2 lambda_2^{(2)}(P^t).
std::pair<double, double> leakage_bounds(const StochasticKernel& P, const ProbabilityVector& pi,
                                         const std::vector<int>& A, int t);

/// Exact k-way expansion by enumeration: conductance of the chain for k = 2
/// (min over pi(A) <= 1/2), min-max over k disjoint non-empty sets for k >= 3.
/// Guarded by brute-force caps on the state count.
double conductance_profile(const StochasticKernel& P, const ProbabilityVector& pi, int k,
                           int cap_two = 14, int cap_many = 10);

/// Cheeger sandwich (1 - lambda_k^{(1)})/2 <= Phi_*(k) <= C k^4 sqrt(1 - lambda_k^{(2)}).
/// The constant C in the upper bound is unspecified in the source inequality;
/// the returned upper uses the given C and is advisory.
std::pair<double, double> cheeger_bounds(const StochasticKernel& P, const ProbabilityVector& pi,
                                         int k, double constant = 1.0);

}  // namespace mhrev
