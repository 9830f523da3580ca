#include <doctest.h>

#include "mhrev/expansion.hpp"
#include "mhrev/kernel.hpp"
#include "mhrev/models.hpp"
#include "mhrev/reversiblize.hpp"
#include "support.hpp"

using namespace mhrev;
using namespace mhrev::testing;

TEST_CASE("triangle reconstructions") {
  const auto P = triangle();
  const auto pi = stationary_distribution(P);

  check_matrix_near(pseudospectral_reconstruct(P, pi, 1).matrix(), P.matrix(), 1e-10);

  Matrix P4(3, 3);
  P4 << 0.0, 0.5, 0.5, 0.25, 0.25, 0.5, 0.25, 0.5, 0.25;
  check_matrix_near(pseudospectral_reconstruct(P, pi, 4).matrix(), P4, 1e-10);

  Matrix P5_star(3, 3);
  P5_star << 0.25, 0.5, 0.25, 0.125, 0.5, 0.375, 0.25, 0.25, 0.5;
  check_matrix_near(pseudospectral_reconstruct_reversal(P, pi, 5).matrix(), P5_star, 1e-10);
}

TEST_CASE("reversible chains reduce to the plain spectral theorem") {
  auto rng = make_rng(17);
  const auto base = random_chain(5, rng);
  const auto pi = stationary_distribution(base);
  const auto R = mh_first(base, pi);
  check_matrix_near(pseudospectral_reconstruct(R, pi, 1).matrix(), R.matrix(), 1e-10);
  check_matrix_near(pseudospectral_reconstruct_reversal(R, pi, 1).matrix(), R.matrix(), 1e-10);
}

TEST_CASE("reconstruction matches direct powers on random chains") {
  auto rng = make_rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const int n_states = 3 + trial % 6;
    const auto P = random_chain(n_states, rng);
    const auto pi = stationary_distribution(P);
    for (int n : {1, 2, 3, 5}) {
      const Matrix Pn = kernel_power(P, n).matrix();
      const Matrix rebuilt = pseudospectral_reconstruct(P, pi, n).matrix();
      check_matrix_near(rebuilt, Pn, 1e-9);
      for (int x = 0; x < n_states; ++x) {
        CHECK(rebuilt.row(x).sum() == doctest::Approx(1.0).epsilon(1e-9));
      }
      const Matrix Pn_star = pi_adjoint(Pn, pi);
      check_matrix_near(pseudospectral_reconstruct_reversal(P, pi, n).matrix(), Pn_star, 1e-9);
    }
  }
}

TEST_CASE("expansion applied to functions") {
  const auto P = triangle();
  const auto pi = stationary_distribution(P);

  const Vector ones = Vector::Ones(3);
  check_matrix_near(expansion_apply(P, pi, 1, ones), ones, 1e-10);

  Vector e0 = Vector::Zero(3);
  e0[0] = 1.0;
  const Vector col = expansion_apply(P, pi, 1, e0);
  CHECK(col[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(col[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(col[2] == doctest::Approx(0.5).epsilon(1e-10));

  auto rng = make_rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto Q = random_chain(5, rng);
    const auto piQ = stationary_distribution(Q);
    const Vector f = random_vector(5, rng);
    for (int n : {1, 2, 4}) {
      const Vector expected = kernel_power(Q, n).matrix() * f;
      check_matrix_near(expansion_apply(Q, piQ, n, f), expected, 1e-9);
    }
  }

  CHECK_THROWS_AS(expansion_apply(P, pi, 1, Vector::Ones(4)), DimensionMismatch);
}
