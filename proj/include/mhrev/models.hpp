#pragma once

#include <string>
#include <vector>

#include "mhrev/types.hpp"

namespace mhrev {

/// Asymmetric simple random walk on the n-cycle: p clockwise, 1-p back.
StochasticKernel asymmetric_cycle(int n, double p);

/// Product walk on the d-dimensional discrete torus Z_n^d: pick a coordinate
/// uniformly and move it by the cycle kernel.
StochasticKernel torus_walk(int n, int d, double p, int size_cap = 4096);

/// Non-reversible walk on the triangle {0,1,2}:
/// P(0,1) = P(1,2) = 1, P(2,0) = P(2,1) = 1/2.
StochasticKernel triangle();

/// Non-reversible sampler on Z/2mZ labeled {-(m-1),...,m}:
/// P(i,i+1) = 1 - 1/m, P(i,-i) = 1/m. Doubly stochastic.
StochasticKernel dhn_sampler(int m);

/// State labels of dhn_sampler in index order.
std::vector<std::string> dhn_labels(int m);

/// Winning streak chain on {0..m}: P(i,0) = P(i,i+1) = 1/2, P(m,m) = 1/2.
/// Its time reversal mixes exactly in m steps.
StochasticKernel winning_streak(int m);

/// The 4-state upward skip-free chain with eigenvalues (1, 0.52, 0.25, 0.13).
StochasticKernel upward_skip_free();

/// Parameterization of the birth-death base chains.
struct BirthDeathSpec {
  enum class Kind { Ehrenfest, MM1, MMInfinity, GWI };
  Kind kind = Kind::Ehrenfest;
  double p = 0.5;       ///< Ehrenfest bias
  double lambda = 1.0;  ///< birth parameter (MM1/MMInf/GWI)
  double mu = 2.0;      ///< MM1 death rate
  double r = 1.0;       ///< GWI immigration shape
  int n = 4;            ///< Ehrenfest size, states {0..n}
  int truncation = 60;  ///< window cap for the infinite-state chains

  static BirthDeathSpec ehrenfest(int n, double p);
  static BirthDeathSpec mm1(double lambda, double mu, int truncation);
  static BirthDeathSpec mm_infinity(double lambda, int truncation);
  static BirthDeathSpec gwi(double lambda, double r, int truncation);
};

/// Tridiagonal generator on the (possibly truncated) window together with
/// the renormalized stationary distribution. The top boundary is death-only,
/// which keeps rows summing to zero and detailed balance exact.
/// `tail_mass` is the untruncated stationary mass beyond the window.
struct BirthDeath {
  RateGenerator generator;
  ProbabilityVector stationary;
  double tail_mass = 0.0;
};

BirthDeath birth_death_generator(const BirthDeathSpec& spec);

/// n-dimensional cyclic vortex supported on states {0..n-1}:
/// V(i,(i+1) mod n) = 1/pi(i), V(i,i) = -1/pi(i). Divergence-free: pi V = 0.
RateGenerator cyclic_vortex(int n, const ProbabilityVector& pi);

}  // namespace mhrev
