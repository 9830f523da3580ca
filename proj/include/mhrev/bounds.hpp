#pragma once

#include <utility>
#include <vector>

#include "mhrev/spectra.hpp"
#include "mhrev/types.hpp"

namespace mhrev {

/// Total variation distance (1/2) sum_x |mu(x) - nu(x)|. Signed measures are
/// accepted; both inputs are expected to sum to 1.
double tv_distance(const Vector& mu, const Vector& nu);

/// Worst-start distance d(n) = max_x ||P^n(x,.) - pi||_TV for n = 1..n_max.
struct MixingProfile {
  std::vector<double> d;  ///< d[i] is the distance after i+1 steps
  bool monotone = true;   ///< non-increasing within 1e-12
};

MixingProfile exact_mixing_profile(const StochasticKernel& P, const ProbabilityVector& pi,
                                   int n_max);

/// Smallest n with d(n) <= epsilon, or -1 when the profile never gets there.
int exact_mixing_time(const MixingProfile& profile, double epsilon);

/// t_mix(eps) <= t* + log(1/(eps pi_min)) / gamma^MH, natural log. The
/// `reversible_form` drops t*, matching the classical reversible bound.
struct MixingTimeBound {
  double value = 0.0;
  double reversible_form = 0.0;
};

MixingTimeBound mixing_time_bound(const GapScanResult& scan, const ProbabilityVector& pi,
                                  double epsilon);

/// Minimal slack, over starting states, of the four TV comparison
/// inequalities between P^n, P*^n and M1(P^n), M2(P^n) (constants 3/2, 3/2,
/// 2, 3). All four are nonnegative when the inequalities hold.
struct TvCrossSlacks {
  double forward = 0.0;        ///< 3/2 TV(M1) + 3/2 TV(M2) - TV(P^n)
  double reversed = 0.0;       ///< 3/2 TV(M1) + 3/2 TV(M2) - TV(P*^n)
  double first_kernel = 0.0;   ///< 2 TV(P^n) + 2 TV(P*^n) - TV(M1)
  double second_kernel = 0.0;  ///< 3 TV(P^n) + 3 TV(P*^n) - TV(M2)
};

TvCrossSlacks tv_cross_bounds_check(const StochasticKernel& P, const ProbabilityVector& pi,
                                    int n);

/// Operator norm comparison on L^2_0: returns (lhs, rhs) of
/// ||P|| <= ||M1|| + ||M2|| + |lambda(M1(P^2))|^{1/2} + |lambda(M2(P^2))|^{1/2}.
std::pair<double, double> operator_norm_bound_check(const StochasticKernel& P,
                                                    const ProbabilityVector& pi);

/// Stationary-chain variance bound: returns (bound, exact) for
/// Var_pi(sum_{i=1}^n f(X_i)) <= n V_f (|C^c| + 2/gamma^MH). The exact value
/// comes from the closed-form lagged-covariance sum.
std::pair<double, double> variance_bound(const StochasticKernel& P, const ProbabilityVector& pi,
                                         const GapScanResult& scan, const Vector& f, int n);

/// Asymptotic-variance comparison: returns (bound, exact_gap) where
/// exact_gap = |Var_n - n sigma_as^2| at an n where the geometric tail has
/// stabilized and bound = 4 V_f (1 + |C^c| + 4 (beta^MH)^{|C^c|+1}/gamma^MH)^2.
std::pair<double, double> asymptotic_variance_bound(const StochasticKernel& P,
                                                    const ProbabilityVector& pi,
                                                    const GapScanResult& scan, const Vector& f);

/// Per-step functions f_1..f_n: Var_pi(sum f_i(X_i)) <= sum_i Var(f_i) (|C^c| + 2/gamma^MH).
std::pair<double, double> heterogeneous_variance_bound(const StochasticKernel& P,
                                                       const ProbabilityVector& pi,
                                                       const GapScanResult& scan,
                                                       const std::vector<Vector>& fs);

/// Birth-death process with an n-dimensional cyclic vortex, evaluated on a
/// finite truncation.
struct VortexModel {
  enum class Kind { Ehrenfest, MM1, MMInfinity, GWI };
  Kind kind = Kind::Ehrenfest;
  int ehrenfest_n = 4;    ///< Ehrenfest state space {0..n}
  double p = 0.5;         ///< Ehrenfest bias
  double lambda = 1.0;    ///< arrival / birth parameter
  double mu = 2.0;        ///< MM1 service rate
  double r = 1.0;         ///< GWI immigration shape
  int truncation = 60;    ///< truncation cap (ignored for Ehrenfest)
  int vortex_dim = 4;     ///< cyclic vortex dimension n
};

/// Closed-form spectral gap bounds for the vortex-perturbed generator plus
/// the exact gap of the truncated chain. The lower bound is asserted against
/// gamma_exact; the upper bound refers to the untruncated chain and is only
/// reported (`upper_holds_on_truncation` and `truncation_caveat` qualify it).
struct VortexGapBounds {
  double lower = 0.0;
  double upper = 0.0;
  double gamma_exact = 0.0;
  double gamma_base_truncated = 0.0;  ///< gap of the truncated reversible base
  bool upper_holds_on_truncation = true;
  bool truncation_caveat = false;
};

VortexGapBounds vortex_gap_bounds(const VortexModel& model);

}  // namespace mhrev
