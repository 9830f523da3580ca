#pragma once

#include "mhrev/types.hpp"

namespace mhrev {

/// Solves pi P = pi by a direct linear solve with a normalization row
/// (power iteration fallback for very large chains). Requires an
/// irreducible chain, checked structurally via strong connectivity of the
/// positive-entry graph.
///
/// Throws ReducibleChain or NonPositiveStationary.
ProbabilityVector stationary_distribution(const StochasticKernel& P);

/// True iff every state reaches every other through positive-probability
/// transitions.
bool is_irreducible(const Matrix& P);

/// Max-norm residual of stationarity, ||pi P - pi||_inf.
double stationarity_residual(const Matrix& P, const ProbabilityVector& pi);

/// Time reversal P*(x,y) = pi(y) P(y,x) / pi(x).
/// Throws NotStationary if pi is not stationary for P within 1e-10.
StochasticKernel time_reversal(const StochasticKernel& P, const ProbabilityVector& pi);

/// pi-adjoint of an arbitrary square matrix (no stochasticity assumed).
Matrix pi_adjoint(const Matrix& K, const ProbabilityVector& pi);

/// n-th power by repeated matrix product. Rows are renormalized only when
/// the accumulated drift exceeds 1e-12; `renormalized`, when given, records
/// whether that happened.
StochasticKernel kernel_power(const StochasticKernel& P, int n, bool* renormalized = nullptr);

/// Detailed-balance test: max_{x,y} |pi(x)P(x,y) - pi(y)P(y,x)| <= tol.
bool is_reversible(const StochasticKernel& P, const ProbabilityVector& pi, double tol = kSolvedTol);

/// <f, g>_pi = sum_x f(x) g(x) pi(x).
double weighted_inner_product(const Vector& f, const Vector& g, const ProbabilityVector& pi);

/// Rank-one kernel with every row equal to pi.
Matrix stationary_projector(const ProbabilityVector& pi);

}  // namespace mhrev
