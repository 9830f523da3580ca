#include "mhrev/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mhrev/kernel.hpp"
#include "mhrev/parallel.hpp"
#include "mhrev/reversiblize.hpp"

namespace mhrev {

namespace detail {

namespace {

void require_pi_self_adjoint(const Matrix& K, const ProbabilityVector& pi) {
  const int n = static_cast<int>(K.rows());
  if (pi.size() != n) {
    throw DimensionMismatch("self_adjoint_spectrum: pi and kernel sizes differ");
  }
  double asym = 0.0, scale = 1.0;
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      const double a = pi[x] * K(x, y);
      const double b = pi[y] * K(y, x);
      asym = std::max(asym, std::abs(a - b));
      scale = std::max({scale, std::abs(a), std::abs(b)});
    }
  }
  if (asym > 1e-8 * scale) {
    throw NotSelfAdjoint("self_adjoint_spectrum: operator is not pi-self-adjoint (residual " +
                         std::to_string(asym) + ")");
  }
}

Matrix symmetrize(const Matrix& K, const ProbabilityVector& pi) {
  const int n = static_cast<int>(K.rows());
  const Vector d = pi.values().cwiseSqrt();
  Matrix S(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      S(x, y) = d[x] * K(x, y) / d[y];
    }
  }
  return S;
}

// Index of the eigenvalue to exclude from the L^2_0 view: the one closest to
// the constant-function eigenvalue whose eigenvector has nonzero pi-mean.
int dropped_index(const SymmetricEigen& eig, const Vector& sqrt_pi, double constant_ev) {
  const int n = static_cast<int>(eig.values.size());
  int best = -1;
  double best_dist = 0.0;
  for (int j = 0; j < n; ++j) {
    // pi-mean of the mapped eigenvector equals <v_j, sqrt(pi)>.
    if (std::abs(eig.vectors.col(j).dot(sqrt_pi)) <= 1e-6) continue;
    const double dist = std::abs(eig.values[j] - constant_ev);
    if (best < 0 || dist < best_dist) {
      best = j;
      best_dist = dist;
    }
  }
  if (best >= 0) return best;
  for (int j = 0; j < n; ++j) {
    const double dist = std::abs(eig.values[j] - constant_ev);
    if (best < 0 || dist < best_dist) {
      best = j;
      best_dist = dist;
    }
  }
  return best;
}

}  // namespace

SpectrumReport spectrum_impl(const Matrix& K, const ProbabilityVector& pi, bool want_vectors,
                             OperatorKind kind) {
  require_pi_self_adjoint(K, pi);
  const int n = static_cast<int>(K.rows());
  const double constant_ev = kind == OperatorKind::Kernel ? 1.0 : 0.0;

  SymmetricEigen eig = jacobi_eigensolve(symmetrize(K, pi), want_vectors);

  SpectrumReport rep;
  rep.eigenvalues = eig.values;
  if (want_vectors) {
    const Vector d = pi.values().cwiseSqrt();
    rep.dropped = dropped_index(eig, d, constant_ev);
    rep.eigenvectors.resize(n, n);
    for (int j = 0; j < n; ++j) {
      Vector phi = eig.vectors.col(j).cwiseQuotient(d);
      int arg = 0;
      phi.cwiseAbs().maxCoeff(&arg);
      if (phi[arg] < 0.0) phi = -phi;
      rep.eigenvectors.col(j) = phi;
    }
  } else {
    // Values are sorted; constants live at the top for kernels and at the
    // bottom of the -G spectrum for generators.
    rep.dropped = kind == OperatorKind::Kernel ? 0 : n - 1;
  }
  if (std::abs(rep.eigenvalues[rep.dropped] - constant_ev) > 1e-8) {
    throw InvariantViolation("self_adjoint_spectrum: operator does not fix constants");
  }

  if (n == 1) {
    rep.lambda_min = rep.lambda_max_sub = 0.0;
  } else {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int j = 0; j < n; ++j) {
      if (j == rep.dropped) continue;
      lo = std::min(lo, rep.eigenvalues[j]);
      hi = std::max(hi, rep.eigenvalues[j]);
    }
    rep.lambda_min = lo;
    rep.lambda_max_sub = hi;
  }
  rep.beta = std::max(std::abs(rep.lambda_min), rep.lambda_max_sub);
  rep.gamma = 1.0 - rep.lambda_max_sub;
  rep.gamma_star = 1.0 - rep.beta;
  return rep;
}

std::pair<Matrix, Matrix> mh_pair_matrices(const Matrix& P, const ProbabilityVector& pi) {
  const int n = static_cast<int>(P.rows());
  const Matrix Ps = pi_adjoint(P, pi);
  Matrix M1 = P.cwiseMin(Ps);
  for (int x = 0; x < n; ++x) {
    M1(x, x) = 0.0;
    M1(x, x) = 1.0 - M1.row(x).sum();
  }
  Matrix M2 = P + Ps - M1;
  return {std::move(M1), std::move(M2)};
}

std::pair<double, double> sub_extrema(const Matrix& K, const ProbabilityVector& pi,
                                      OperatorKind kind) {
  const int n = static_cast<int>(K.rows());
  if (n == 1) return {0.0, 0.0};
  SymmetricEigen eig = jacobi_eigensolve(symmetrize(K, pi), /*want_vectors=*/false);
  if (kind == OperatorKind::Kernel) {
    return {eig.values[n - 1], eig.values[1]};
  }
  return {eig.values[n - 2], eig.values[0]};
}

double gap_root(double value, int k) {
  if (std::abs(value) <= kEigNoiseFloor) return 0.0;
  return std::copysign(std::pow(std::abs(value), 1.0 / k), value);
}

}  // namespace detail

SpectrumReport self_adjoint_spectrum(const StochasticKernel& K, const ProbabilityVector& pi,
                                     bool want_vectors) {
  return detail::spectrum_impl(K.matrix(), pi, want_vectors, detail::OperatorKind::Kernel);
}

SpectrumReport self_adjoint_spectrum(const SignedKernel& K, const ProbabilityVector& pi,
                                     bool want_vectors) {
  return detail::spectrum_impl(K.matrix(), pi, want_vectors, detail::OperatorKind::Kernel);
}

GeneratorSpectrum generator_spectrum(const RateGenerator& G, const ProbabilityVector& pi,
                                     bool want_vectors) {
  SpectrumReport rep =
      detail::spectrum_impl(-G.matrix(), pi, want_vectors, detail::OperatorKind::Generator);
  const int n = static_cast<int>(rep.eigenvalues.size());
  GeneratorSpectrum out;
  out.eigenvalues = rep.eigenvalues.reverse();
  if (want_vectors) out.eigenvectors = rep.eigenvectors.rowwise().reverse();
  out.dropped = n - 1 - rep.dropped;
  out.gamma = rep.lambda_min;  // smallest nonzero eigenvalue of -G
  return out;
}

double generator_spectral_gap(const RateGenerator& G, const ProbabilityVector& pi) {
  const Matrix sym = 0.5 * (G.matrix() + pi_adjoint(G.matrix(), pi));
  return detail::sub_extrema(-sym, pi, detail::OperatorKind::Generator).first;
}

double right_spectral_gap(const StochasticKernel& P, const ProbabilityVector& pi) {
  const Matrix add = 0.5 * (P.matrix() + pi_adjoint(P.matrix(), pi));
  return 1.0 - detail::sub_extrema(add, pi, detail::OperatorKind::Kernel).second;
}

namespace {

// Advances the running power one step and repairs >1e-12 row-sum drift.
void advance_power(Matrix& Pk, const Matrix& P) {
  Pk = (Pk * P).eval();
  for (int x = 0; x < Pk.rows(); ++x) {
    const double s = Pk.row(x).sum();
    if (std::abs(s - 1.0) > kStructuralTol) Pk.row(x) /= s;
  }
}

}  // namespace

std::pair<double, int> pseudo_spectral_gap(const StochasticKernel& P, const ProbabilityVector& pi,
                                           int n_max) {
  if (n_max < 1) throw BadParams("pseudo_spectral_gap: n_max must be >= 1");
  const int chunk = std::max(4 * thread_budget(), 8);
  std::vector<double> ps(n_max + 1, 0.0);
  Matrix Pk;
  for (int k0 = 1; k0 <= n_max; k0 += chunk) {
    const int k1 = std::min(k0 + chunk - 1, n_max);
    std::vector<Matrix> powers(k1 - k0 + 1);
    for (int k = k0; k <= k1; ++k) {
      if (k == 1) {
        Pk = P.matrix();
      } else {
        advance_power(Pk, P.matrix());
      }
      powers[k - k0] = Pk;
    }
    parallel_for_index(k0, k1 + 1, [&](int k) {
      const Matrix& Q = powers[k - k0];
      const Matrix mult = pi_adjoint(Q, pi) * Q;
      const double Lam = detail::sub_extrema(mult, pi, detail::OperatorKind::Kernel).second;
      ps[k] = (1.0 - Lam) / k;
    });
  }
  double best = ps[1];
  int arg = 1;
  for (int k = 2; k <= n_max; ++k) {
    if (ps[k] > best) {
      best = ps[k];
      arg = k;
    }
  }
  return {best, arg};
}

GapScanResult mh_spectral_gap(const StochasticKernel& P, const ProbabilityVector& pi, int n_max,
                              double tol) {
  if (n_max < 1) throw BadParams("mh_spectral_gap: n_max must be >= 1");
  GapScanResult result;
  result.n_max = n_max;
  result.per_k.resize(n_max);

  const int chunk = std::max(4 * thread_budget(), 8);
  Matrix Pk;
  for (int k0 = 1; k0 <= n_max; k0 += chunk) {
    const int k1 = std::min(k0 + chunk - 1, n_max);
    std::vector<Matrix> powers(k1 - k0 + 1);
    for (int k = k0; k <= k1; ++k) {
      if (k == 1) {
        Pk = P.matrix();
      } else {
        advance_power(Pk, P.matrix());
      }
      powers[k - k0] = Pk;
    }
    parallel_for_index(k0, k1 + 1, [&](int k) {
      const Matrix& Q = powers[k - k0];
      auto [M1, M2] = detail::mh_pair_matrices(Q, pi);
      GapStep step;
      step.k = k;
      step.Lambda_M1 = detail::sub_extrema(M1, pi, detail::OperatorKind::Kernel).second;
      step.lambda_M2 = detail::sub_extrema(M2, pi, detail::OperatorKind::Kernel).first;
      const Matrix mult = pi_adjoint(Q, pi) * Q;
      const double LamMult = detail::sub_extrema(mult, pi, detail::OperatorKind::Kernel).second;
      step.ps_term = (1.0 - LamMult) / k;
      step.Lambda_M1_root = detail::gap_root(step.Lambda_M1, k);
      step.abs_lambda_M2_root = std::abs(detail::gap_root(step.lambda_M2, k));
      step.in_C = std::abs(step.lambda_M2) < 1.0 - tol && step.Lambda_M1 < 1.0 - tol;
      result.per_k[k - 1] = step;
    });
  }

  // Reductions in index order.
  double beta = -1.0;
  result.gamma_ps = result.per_k[0].ps_term;
  result.gamma_ps_arg = 1;
  for (const GapStep& s : result.per_k) {
    if (s.ps_term > result.gamma_ps) {
      result.gamma_ps = s.ps_term;
      result.gamma_ps_arg = s.k;
    }
    if (s.in_C) {
      beta = std::max(beta, std::max(s.Lambda_M1_root, s.abs_lambda_M2_root));
    } else {
      result.C_complement.push_back(s.k);
    }
  }
  result.beta_MH = beta < 0.0 ? 1.0 : beta;
  result.gamma_MH = 1.0 - result.beta_MH;
  result.t_star = result.C_complement.empty() ? 0 : result.C_complement.back();

  const Matrix Pi = stationary_projector(pi);
  result.converged = (Pk - Pi).cwiseAbs().rowwise().sum().maxCoeff() < 1e-6;
  return result;
}

WeylSandwich weyl_sandwich(const StochasticKernel& P, const ProbabilityVector& pi) {
  const int n = P.size();
  if (n < 2) throw BadParams("weyl_sandwich: need at least 2 states");
  auto [M1, M2] = detail::mh_pair_matrices(P.matrix(), pi);
  const Vector lam1 = detail::spectrum_impl(M1, pi, false, detail::OperatorKind::Kernel).eigenvalues;
  const Vector lam2 = detail::spectrum_impl(M2, pi, false, detail::OperatorKind::Kernel).eigenvalues;

  WeylSandwich w;
  w.L = -std::numeric_limits<double>::infinity();
  for (int l = 1; l <= n; ++l) {
    const int m = n + 2 - l;
    if (m < 1 || m > n) continue;
    w.L = std::max(w.L, lam1[l - 1] + lam2[m - 1]);
  }
  w.U = std::min(lam1[0] + lam2[1], lam1[1] + lam2[0]);
  w.gamma_lower = 1.0 - 0.5 * w.U;
  w.gamma_upper = 1.0 - 0.5 * w.L;

  // Self-check of the i = 2 Weyl inequalities on P + P*.
  const Matrix add = 0.5 * (P.matrix() + pi_adjoint(P.matrix(), pi));
  const double l2 =
      2.0 * detail::spectrum_impl(add, pi, false, detail::OperatorKind::Kernel).eigenvalues[1];
  if (l2 > w.U + 1e-8 || l2 < w.L - 1e-8) {
    throw InvariantViolation("weyl_sandwich: Weyl inequality violated at i = 2");
  }
  return w;
}

bool lazy_contraction_check(const StochasticKernel& P, const ProbabilityVector& pi) {
  const int n = P.size();
  if (!is_irreducible(P.matrix())) {
    throw PreconditionViolated("lazy_contraction_check: chain is not irreducible");
  }
  for (int x = 0; x < n; ++x) {
    if (P.matrix()(x, x) < 0.5 - kStructuralTol) {
      throw PreconditionViolated("lazy_contraction_check: state " + std::to_string(x) +
                                 " is not lazy");
    }
  }
  auto [M1, M2] = detail::mh_pair_matrices(P.matrix(), pi);
  (void)M1;
  const double lam = detail::sub_extrema(M2, pi, detail::OperatorKind::Kernel).first;
  return lam >= -1.0 - kSolvedTol;
}

}  // namespace mhrev
