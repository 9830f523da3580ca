#include <doctest.h>

#include <algorithm>

#include "mhrev/kernel.hpp"
#include "mhrev/models.hpp"
#include "mhrev/reversiblize.hpp"
#include "support.hpp"

using namespace mhrev;
using namespace mhrev::testing;

TEST_CASE("triangle MH kernels and low powers") {
  const auto P = triangle();
  const auto pi = stationary_distribution(P);

  Matrix M1(3, 3), M2(3, 3);
  M1 << 1.0, 0.0, 0.0, 0.0, 0.5, 0.5, 0.0, 0.5, 0.5;
  M2 << -1.0, 1.0, 1.0, 0.5, -0.5, 1.0, 0.5, 1.0, -0.5;
  check_matrix_near(mh_first(P, pi).matrix(), M1, 1e-15);
  check_matrix_near(mh_second(P, pi).matrix(), M2, 1e-15);

  const auto P2 = kernel_power(P, 2);
  check_matrix_near(mh_first(P2, pi).matrix(), Matrix::Identity(3, 3), 1e-15);
  Matrix M2_2(3, 3);
  M2_2 << -1.0, 1.0, 1.0, 0.5, 0.0, 0.5, 0.5, 0.5, 0.0;
  check_matrix_near(mh_second(P2, pi).matrix(), M2_2, 1e-15);

  const auto P3 = kernel_power(P, 3);
  Matrix M1_3(3, 3), M2_3(3, 3);
  M1_3 << 1.0, 0.0, 0.0, 0.0, 0.75, 0.25, 0.0, 0.25, 0.75;
  M2_3 << 0.0, 0.5, 0.5, 0.25, 0.25, 0.5, 0.25, 0.5, 0.25;
  check_matrix_near(mh_first(P3, pi).matrix(), M1_3, 1e-15);
  check_matrix_near(mh_second(P3, pi).matrix(), M2_3, 1e-15);
}

TEST_CASE("cycle MH kernels in closed form") {
  const int n = 6;
  const double p = 0.75, l = 0.25, r = 0.75;
  const auto P = asymmetric_cycle(n, p);
  const auto pi = stationary_distribution(P);
  const Matrix M1 = mh_first(P, pi).matrix();
  const Matrix M2 = mh_second(P, pi).matrix();
  for (int j = 0; j < n; ++j) {
    CHECK(M1(j, (j + 1) % n) == doctest::Approx(l).epsilon(1e-14));
    CHECK(M1(j, (j + n - 1) % n) == doctest::Approx(l).epsilon(1e-14));
    CHECK(M1(j, j) == doctest::Approx(1 - 2 * l).epsilon(1e-14));
    CHECK(M2(j, (j + 1) % n) == doctest::Approx(r).epsilon(1e-14));
    CHECK(M2(j, (j + n - 1) % n) == doctest::Approx(r).epsilon(1e-14));
    CHECK(M2(j, j) == doctest::Approx(1 - 2 * r).epsilon(1e-14));
  }
}

TEST_CASE("reversible chains are their own MH kernels") {
  const auto P = asymmetric_cycle(5, 0.5);
  const auto pi = stationary_distribution(P);
  check_matrix_near(mh_first(P, pi).matrix(), P.matrix(), 1e-14);
  check_matrix_near(mh_second(P, pi).matrix(), P.matrix(), 1e-14);
}

TEST_CASE("skip-free second kernel bottom row") {
  const auto P = upward_skip_free();
  const auto pi = stationary_distribution(P);
  const Matrix M2 = mh_second(P, pi).matrix();
  CHECK(M2(3, 0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(M2(3, 1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(M2(3, 2) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(M2(3, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("acceptance regions") {
  const auto P = triangle();
  const auto pi = stationary_distribution(P);
  CHECK(acceptance_region(P, pi, 0) == std::vector<int>{1});
  CHECK(acceptance_region(P, pi, 1) == std::vector<int>{2});

  const auto R = asymmetric_cycle(5, 0.5);
  const auto piR = stationary_distribution(R);
  for (int x = 0; x < 5; ++x) CHECK(acceptance_region(R, piR, x).empty());
}

TEST_CASE("additive reversiblization") {
  const auto C = asymmetric_cycle(8, 0.9);
  const auto piC = stationary_distribution(C);
  check_matrix_near(additive_reversiblization(C, piC).matrix(),
                    asymmetric_cycle(8, 0.5).matrix(), 1e-14);

  const auto P = triangle();
  const auto pi = stationary_distribution(P);
  Matrix expected(3, 3);  // (P + P*)/2 by direct arithmetic
  expected << 0.0, 0.5, 0.5, 0.25, 0.0, 0.75, 0.25, 0.75, 0.0;
  check_matrix_near(additive_reversiblization(P, pi).matrix(), expected, 1e-15);
}

TEST_CASE("multiplicative reversiblization") {
  const auto sym = asymmetric_cycle(6, 0.5);
  const auto piS = stationary_distribution(sym);
  check_matrix_near(multiplicative_reversiblization(sym, piS, 1).matrix(),
                    kernel_power(sym, 2).matrix(), 1e-14);

  auto rng = make_rng(23);
  const auto P = random_chain(5, rng);
  const auto pi = stationary_distribution(P);
  const Matrix expected =
      pi_adjoint(kernel_power(P, 3).matrix(), pi) * kernel_power(P, 3).matrix();
  check_matrix_near(multiplicative_reversiblization(P, pi, 3).matrix(), expected, 1e-13);
}

TEST_CASE("MH kernel lemma identities on random chains") {
  auto rng = make_rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 3 + trial % 6;
    const auto P = random_chain(n, rng);
    const auto pi = stationary_distribution(P);
    const Matrix Ps = time_reversal(P, pi).matrix();
    const Matrix M1 = mh_first(P, pi).matrix();
    const Matrix M2 = mh_second(P, pi).matrix();

    // (i) M1 + M2 = P + P*
    check_matrix_near(M1 + M2, P.matrix() + Ps, 1e-12);

    // (ii) pi-self-adjointness
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        CHECK(pi[x] * M1(x, y) == doctest::Approx(pi[y] * M1(y, x)).epsilon(1e-12));
        CHECK(pi[x] * M2(x, y) == doctest::Approx(pi[y] * M2(y, x)).epsilon(1e-12));
      }
    }

    // (iv) M_i(P) = M_i(P*)
    const StochasticKernel Pstar(Ps);
    check_matrix_near(mh_first(Pstar, pi).matrix(), M1, 1e-12);
    check_matrix_near(mh_second(Pstar, pi).matrix(), M2, 1e-12);

    // Row sums
    for (int x = 0; x < n; ++x) {
      CHECK(M1.row(x).sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(M2.row(x).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }

    // Peskun ordering off the diagonal
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (x == y) continue;
        CHECK(M2(x, y) >= P.matrix()(x, y) - 1e-14);
        CHECK(P.matrix()(x, y) >= M1(x, y) - 1e-14);
      }
    }

    // Positive semidefiniteness of M1 - P and P - M2 on centered functions
    const Vector f = random_centered(n, pi, rng);
    CHECK(weighted_inner_product((M1 - P.matrix()) * f, f, pi) >= -1e-10);
    CHECK(weighted_inner_product((P.matrix() - M2) * f, f, pi) >= -1e-10);
  }
}

TEST_CASE("reversibility is equivalent to M1 = M2 = P") {
  auto rng = make_rng(5);
  const auto P = random_chain(5, rng);
  const auto pi = stationary_distribution(P);
  const Matrix M1 = mh_first(P, pi).matrix();
  const bool rev = is_reversible(P, pi);
  const bool collapse = (M1 - P.matrix()).cwiseAbs().maxCoeff() <= 1e-10;
  CHECK(rev == collapse);
  // Metropolised chains collapse.
  const StochasticKernel R(M1);
  check_matrix_near(mh_first(R, pi).matrix(), M1, 1e-12);
  check_matrix_near(mh_second(R, pi).matrix(), M1, 1e-12);
}

TEST_CASE("generator MH pair") {
  const auto base = birth_death_generator(BirthDeathSpec::ehrenfest(5, 0.4));
  const int n = base.stationary.size();

  SUBCASE("zero vortex returns the base twice") {
    const RateGenerator zero(Matrix::Zero(n, n));
    const auto [m1, m2] = generator_mh_pair(base.generator, zero, base.stationary);
    check_matrix_near(m1.matrix(), base.generator.matrix(), 0.0);
    check_matrix_near(m2.matrix(), base.generator.matrix(), 1e-12);
  }

  SUBCASE("vortex pair is pi-self-adjoint and Peskun ordered") {
    const auto V = cyclic_vortex(4, base.stationary);
    const auto [m1, m2] = generator_mh_pair(base.generator, V, base.stationary);
    const Matrix G = base.generator.matrix() + V.matrix();
    auto rng = make_rng(77);
    for (int trial = 0; trial < 20; ++trial) {
      const Vector f = random_centered(n, base.stationary, rng);
      const double qg = weighted_inner_product(G * f, f, base.stationary);
      const double q1 = weighted_inner_product(m1.matrix() * f, f, base.stationary);
      const double q2 = weighted_inner_product(m2.matrix() * f, f, base.stationary);
      CHECK(q2 <= qg + 1e-9);
      CHECK(qg <= q1 + 1e-9);
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        const double scale = std::max(1.0, std::abs(base.stationary[x] * m2.matrix()(x, y)));
        CHECK(std::abs(base.stationary[x] * m2.matrix()(x, y) -
                       base.stationary[y] * m2.matrix()(y, x)) <= 1e-10 * scale);
      }
    }
  }

  SUBCASE("non-reversible base is rejected") {
    // pi-stationary but not reversible: the base itself carries a vortex.
    const auto V2 = cyclic_vortex(3, base.stationary);
    const RateGenerator skewed(base.generator.matrix() + V2.matrix(), kSolvedTol);
    const auto V = cyclic_vortex(4, base.stationary);
    CHECK_THROWS_AS(generator_mh_pair(skewed, V, base.stationary), NotReversibleBase);
  }
}
