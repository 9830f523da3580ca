#include <doctest.h>

#include <cmath>

#include "mhrev/kernel.hpp"
#include "mhrev/metastability.hpp"
#include "mhrev/models.hpp"
#include "mhrev/reversiblize.hpp"
#include "mhrev/spectra.hpp"
#include "support.hpp"

using namespace mhrev;
using namespace mhrev::testing;

TEST_CASE("flows on the skip-free chain") {
  const auto P = upward_skip_free();
  const auto pi = stationary_distribution(P);
  CHECK(flow(P, pi, {0, 1, 2, 3}, {0, 1, 2, 3}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(flow(P, pi, {0, 1}, {0, 1}) == doctest::Approx(0.87).epsilon(1e-2));
  CHECK(flow(P, pi, {2, 3}, {2, 3}) == doctest::Approx(0.61).epsilon(1e-2));
  CHECK(flow(P, pi, {0, 1, 2}, {0, 1, 2}) == doctest::Approx(0.98).epsilon(1e-2));
}

TEST_CASE("partition metastability values") {
  const auto P = upward_skip_free();
  const auto pi = stationary_distribution(P);
  CHECK(partition_metastability(P, pi, {{{0, 1}, {2, 3}}}) == doctest::Approx(1.48).epsilon(1e-2));
  CHECK(partition_metastability(P, pi, {{{0, 1, 2}, {3}}}) == doctest::Approx(1.28).epsilon(1e-2));

  Vector w(4);
  w << 0.4, 0.3, 0.2, 0.1;
  const ProbabilityVector piI(w);
  const StochasticKernel iid(stationary_projector(piI));
  CHECK(partition_metastability(iid, piI, {{{0}, {1}, {2}, {3}}}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("metastability bounds on the skip-free chain") {
  const auto P = upward_skip_free();
  const auto pi = stationary_distribution(P);
  const auto out = metastability_bounds(P, pi, {{{0, 1}, {2, 3}}});
  CHECK(out.upper == doctest::Approx(1.7351).epsilon(1e-3));
  CHECK(out.a == doctest::Approx(-0.1604).epsilon(1e-3));
  // Frozen from an independent eigensolve of the projection formula.
  CHECK(out.rho[0] == doctest::Approx(0.8543).epsilon(1e-3));
  CHECK(out.lower == doctest::Approx(1.2891).epsilon(1e-3));
  CHECK(out.lower <= out.metastability + 1e-9);
  CHECK(out.metastability <= out.upper + 1e-9);

  const auto out2 = metastability_bounds(P, pi, {{{0, 1, 2}, {3}}});
  CHECK(out2.lower <= out2.metastability + 1e-9);
  CHECK(out2.metastability <= out2.upper + 1e-9);
}

TEST_CASE("trivial partition gives unit bounds") {
  const auto P = upward_skip_free();
  const auto pi = stationary_distribution(P);
  const auto out = metastability_bounds(P, pi, {{{0, 1, 2, 3}}});
  CHECK(out.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.upper == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.metastability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("assumption violation is detected") {
  Vector w(4);
  w << 0.4, 0.3, 0.2, 0.1;
  const ProbabilityVector pi(w);
  const StochasticKernel iid(stationary_projector(pi));
  // M2 spectrum of the projector is (1, 0, 0, 0): no split below rank 2.
  CHECK_THROWS_AS(metastability_bounds(iid, pi, {{{0, 1}, {2, 3}}}), AssumptionViolated);
}

TEST_CASE("metastability sandwich on reversible bipartitions") {
  auto rng = make_rng(83);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto base = random_chain(5, rng);
    const auto pi = stationary_distribution(base);
    const auto R = mh_first(base, pi);
    try {
      const auto out = metastability_bounds(R, pi, {{{0, 1}, {2, 3, 4}}});
      CHECK(out.lower <= out.metastability + 1e-9);
      CHECK(out.metastability <= out.upper + 1e-9);
      ++checked;
    } catch (const AssumptionViolated&) {
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("leakage values") {
  Vector w(4);
  w << 0.4, 0.3, 0.2, 0.1;
  const ProbabilityVector pi(w);
  const StochasticKernel iid(stationary_projector(pi));
  CHECK(leakage(iid, pi, {0, 1}, 1) == doctest::Approx(1.0).epsilon(1e-12));

  // A closed under P leaks nothing.
  Matrix block(4, 4);
  block << 0.5, 0.5, 0, 0, 0.5, 0.5, 0, 0, 0, 0, 0.5, 0.5, 0, 0, 0.5, 0.5;
  Vector u = Vector::Constant(4, 0.25);
  CHECK(leakage(StochasticKernel(block), ProbabilityVector(u), {0, 1}, 3) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(leakage(iid, pi, {0, 1, 2, 3}, 1), DegenerateSet);
}

TEST_CASE("leakage bounds") {
  // Cycle: the lower bound has the closed form 2 l (1 - cos(2 pi / n)).
  const int n = 8;
  const double p = 0.7, l = 0.3;
  const auto P = asymmetric_cycle(n, p);
  const auto pi = stationary_distribution(P);
  const std::vector<int> arc{0, 1, 2, 3};
  const auto [lower, upper] = leakage_bounds(P, pi, arc, 1);
  CHECK(lower == doctest::Approx(2.0 * l * (1.0 - std::cos(2.0 * M_PI / n))).epsilon(1e-10));
  const double leak = leakage(P, pi, arc, 1);
  CHECK(lower <= leak + 1e-9);
  CHECK(leak <= upper + 1e-9);

  const auto S = upward_skip_free();
  const auto piS = stationary_distribution(S);
  for (int t = 1; t <= 5; ++t) {
    const auto [lo, hi] = leakage_bounds(S, piS, {0, 1}, t);
    const double v = leakage(S, piS, {0, 1}, t);
    CHECK(lo <= v + 1e-9);
    CHECK(v <= hi + 1e-9);
  }
}

TEST_CASE("psi_A is orthogonal to constants") {
  auto rng = make_rng(91);
  const auto P = random_chain(6, rng);
  const auto pi = stationary_distribution(P);
  const std::vector<int> A{0, 2, 5};
  double mass = 0.0;
  for (int x : A) mass += pi[x];
  Vector psi(6);
  for (int x = 0; x < 6; ++x) {
    const bool in_a = std::find(A.begin(), A.end(), x) != A.end();
    psi[x] = in_a ? std::sqrt((1.0 - mass) / mass) : -std::sqrt(mass / (1.0 - mass));
  }
  CHECK(weighted_inner_product(psi, Vector::Ones(6), pi) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(weighted_inner_product(psi, psi, pi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conductance by enumeration") {
  // Two components glued by a tiny crossing probability.
  const double eps = 1e-6;
  Matrix P(4, 4);
  P << 0.5 - eps, 0.5, eps, 0, 0.5, 0.5 - eps, 0, eps, eps, 0, 0.5 - eps, 0.5, 0, eps, 0.5,
      0.5 - eps;
  const StochasticKernel K(P);
  const auto pi = stationary_distribution(K);
  CHECK(conductance_profile(K, pi, 2) <= 1e-5);

  Vector w(4);
  w << 0.4, 0.3, 0.2, 0.1;
  const ProbabilityVector piI(w);
  const StochasticKernel iid(stationary_projector(piI));
  // Phi(A) = 1 - pi(A); the best admissible set has mass 0.5 = 0.4 + 0.1.
  CHECK(conductance_profile(iid, piI, 2) == doctest::Approx(0.5).epsilon(1e-12));

  const auto S = upward_skip_free();
  const auto piS = stationary_distribution(S);
  const double phi2 = conductance_profile(S, piS, 2);
  const auto [lo2, hi2] = cheeger_bounds(S, piS, 2);
  CHECK(lo2 <= phi2 + 1e-12);
  CHECK(phi2 <= hi2 + 1e-12);

  CHECK_THROWS_AS(conductance_profile(StochasticKernel(Matrix::Identity(16, 16)),
                                      ProbabilityVector(Vector::Constant(16, 1.0 / 16)), 2),
                  TooLarge);
}

TEST_CASE("cheeger bounds") {
  const auto S = upward_skip_free();
  const auto piS = stationary_distribution(S);
  const auto [lo, hi] = cheeger_bounds(S, piS, 2);
  CHECK(lo == doctest::Approx((1.0 - 0.7351) / 2.0).epsilon(1e-2));
  CHECK(hi >= lo);

  const auto [lo1, hi1] = cheeger_bounds(S, piS, 1);
  CHECK(lo1 == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

  // Reversible chains use the same eigenvalue on both sides.
  auto rng = make_rng(97);
  const auto base = random_chain(5, rng);
  const auto pi = stationary_distribution(base);
  const auto R = mh_first(base, pi);
  const auto rep = self_adjoint_spectrum(R, pi, false);
  for (int k = 1; k <= 5; ++k) {
    const auto [l2, h2] = cheeger_bounds(R, pi, k);
    CHECK(l2 == doctest::Approx(0.5 * (1.0 - rep.eigenvalues[k - 1])).epsilon(1e-10));
    CHECK(h2 == doctest::Approx(std::pow(k, 4.0) *
                                std::sqrt(std::max(0.0, 1.0 - rep.eigenvalues[k - 1])))
                    .epsilon(1e-10));
  }

  // Lower Cheeger bound versus brute force for k = 2 and 3.
  for (int trial = 0; trial < 8; ++trial) {
    const auto Q = lazy_version(random_chain(6, rng));
    const auto piQ = stationary_distribution(Q);
    for (int k : {2, 3}) {
      const double phi = conductance_profile(Q, piQ, k);
      const auto [lk, hk] = cheeger_bounds(Q, piQ, k);
      CHECK(lk <= phi + 1e-10);
    }
  }
}
