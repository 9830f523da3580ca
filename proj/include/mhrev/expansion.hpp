#pragma once

#include "mhrev/types.hpp"

namespace mhrev {

/// Rebuilds P^n entrywise from the eigen-expansions of M1(P^n) and M2(P^n):
/// the M2 expansion on the acceptance region A_x, the M1 expansion on its
/// complement, and the average of both on the diagonal. Throws
/// ReconstructionMismatch when any entry deviates from the direct power by
/// more than 1e-8.
StochasticKernel pseudospectral_reconstruct(const StochasticKernel& P,
                                            const ProbabilityVector& pi, int n);

/// Same expansion with the roles of A_x and its complement swapped; rebuilds
/// the n-step time reversal P*^n.
StochasticKernel pseudospectral_reconstruct_reversal(const StochasticKernel& P,
                                                     const ProbabilityVector& pi, int n);

/// Evaluates P^n f through the two eigen-expansions plus the diagonal term.
Vector expansion_apply(const StochasticKernel& P, const ProbabilityVector& pi, int n,
                       const Vector& f);

}  // namespace mhrev
