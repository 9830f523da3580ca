#pragma once

#include <utility>
#include <vector>

#include "mhrev/types.hpp"

namespace mhrev {

/// First MH kernel M1: Metropolised version of P with target pi. Off the
/// diagonal M1(x,y) = min(p(x,y), p*(x,y)); the diagonal absorbs the
/// rejected mass so rows sum to exactly 1.
StochasticKernel mh_first(const StochasticKernel& P, const ProbabilityVector& pi);

/// Second MH kernel M2, the opposite-transition companion of M1:
/// off-diagonal max(p(x,y), p*(x,y)), computed as p + p* - m1 so that
/// M1 + M2 = P + P* holds entrywise. Rows sum to 1; the diagonal may be
/// negative (down to -1).
SignedKernel mh_second(const StochasticKernel& P, const ProbabilityVector& pi);

/// Acceptance region A_x = {y : alpha_1(x,y) < 1} = {y != x : p*(x,y) < p(x,y)},
/// with floating-point ties (|p - p*| <= 1e-14) resolved to the complement.
std::vector<int> acceptance_region(const StochasticKernel& P, const ProbabilityVector& pi, int x);

/// (P + P*)/2.
StochasticKernel additive_reversiblization(const StochasticKernel& P, const ProbabilityVector& pi);

/// P*^k P^k, the multiplicative reversiblization at step k.
StochasticKernel multiplicative_reversiblization(const StochasticKernel& P,
                                                 const ProbabilityVector& pi, int k = 1);

/// MH pair for a generator perturbed by a vortex: returns
/// (M1(G), M2(G)) = (GBD, GBD + V + V*) where V* is the pi-adjoint of V.
/// Requires pi stationary for GBD + V and GBD reversible w.r.t. pi.
std::pair<RateGenerator, RateGenerator> generator_mh_pair(const RateGenerator& GBD,
                                                          const RateGenerator& V,
                                                          const ProbabilityVector& pi);

}  // namespace mhrev
