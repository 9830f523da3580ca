#include "mhrev/metastability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mhrev/kernel.hpp"
#include "mhrev/spectra.hpp"

namespace mhrev {

namespace {

Vector indicator(const std::vector<int>& A, int n) {
  Vector v = Vector::Zero(n);
  for (int x : A) {
    if (x < 0 || x >= n) throw BadParams("state index out of range");
    v[x] = 1.0;
  }
  return v;
}

double pi_mass(const std::vector<int>& A, const ProbabilityVector& pi) {
  double s = 0.0;
  for (int x : A) s += pi[x];
  return s;
}

}  // namespace

void validate_partition(const Partition& D, int n) {
  std::vector<int> owner(n, -1);
  if (D.blocks.empty()) throw InvariantViolation("Partition: no blocks");
  for (size_t b = 0; b < D.blocks.size(); ++b) {
    if (D.blocks[b].empty()) throw InvariantViolation("Partition: empty block");
    for (int x : D.blocks[b]) {
      if (x < 0 || x >= n) throw InvariantViolation("Partition: state out of range");
      if (owner[x] != -1) throw InvariantViolation("Partition: blocks overlap");
      owner[x] = static_cast<int>(b);
    }
  }
  for (int x = 0; x < n; ++x) {
    if (owner[x] == -1) {
      throw InvariantViolation("Partition: state " + std::to_string(x) + " uncovered");
    }
  }
}

double flow(const StochasticKernel& P, const ProbabilityVector& pi, const std::vector<int>& A,
            const std::vector<int>& B) {
  const int n = P.size();
  const Vector ib = indicator(B, n);
  const double mass = pi_mass(A, pi);
  if (mass <= 0.0) return 0.0;
  double num = 0.0;
  for (int x : A) {
    if (x < 0 || x >= n) throw BadParams("flow: state index out of range");
    num += pi[x] * P.matrix().row(x).dot(ib);
  }
  return num / mass;
}

double partition_metastability(const StochasticKernel& P, const ProbabilityVector& pi,
                               const Partition& D) {
  validate_partition(D, P.size());
  double m = 0.0;
  for (const auto& block : D.blocks) m += flow(P, pi, block, block);
  return m;
}

MetastabilityBounds metastability_bounds(const StochasticKernel& P, const ProbabilityVector& pi,
                                         const Partition& D) {
  const int n = P.size();
  validate_partition(D, n);
  const int nb = static_cast<int>(D.blocks.size());

  auto [M1, M2] = detail::mh_pair_matrices(P.matrix(), pi);
  const SpectrumReport rep1 = detail::spectrum_impl(M1, pi, false, detail::OperatorKind::Kernel);
  const SpectrumReport rep2 = detail::spectrum_impl(M2, pi, true, detail::OperatorKind::Kernel);

  // Band floor: the smallest eigenvalue is the tightest a with
  // sigma(M2) subset [a,b] union dominant part.
  const double a = rep2.eigenvalues[n - 1];
  if (nb < n && a >= rep2.eigenvalues[nb - 1] - 1e-12) {
    throw AssumptionViolated("metastability_bounds: M2 spectrum admits no dominant split at " +
                             std::to_string(nb));
  }

  MetastabilityBounds out;
  out.a = a;
  out.metastability = partition_metastability(P, pi, D);
  out.upper = 1.0;
  for (int j = 1; j < nb; ++j) out.upper += rep1.eigenvalues[j];

  // Projection weights onto the pi-orthonormalized block indicators.
  std::vector<Vector> chi;
  chi.reserve(nb);
  for (const auto& block : D.blocks) {
    Vector v = indicator(block, n);
    chi.push_back(v / std::sqrt(pi_mass(block, pi)));
  }
  // lower = sum_{k<=nb} (lambda_k - a) rho_k + a nb. With a simple top
  // eigenvalue rho_1 = 1 and this is 1 + sum_{j>=2} rho_j lambda_j + c; the
  // general form stays valid when the eigenvalue 1 is degenerate (reducible
  // M1/M2) and the constant direction mixes into several eigenvectors.
  double lower = a * nb;
  double defect = 0.0;
  for (int j = 0; j < nb; ++j) {
    double rho = 0.0;
    for (const Vector& c : chi) {
      const double ip = weighted_inner_product(rep2.eigenvectors.col(j), c, pi);
      rho += ip * ip;
    }
    lower += (rep2.eigenvalues[j] - a) * rho;
    if (j > 0) {
      out.rho.push_back(rho);
      defect += 1.0 - rho;
    }
  }
  out.c = a * defect;
  out.lower = lower;

  if (out.lower - 1e-9 > out.metastability || out.metastability > out.upper + 1e-9) {
    throw InvariantViolation("metastability_bounds: sandwich violated");
  }
  return out;
}

double leakage(const StochasticKernel& P, const ProbabilityVector& pi, const std::vector<int>& A,
               int t) {
  if (t < 1) throw BadParams("leakage: t must be >= 1");
  const int n = P.size();
  const double mass = pi_mass(A, pi);
  if (mass <= 1e-12 || mass >= 1.0 - 1e-12) {
    throw DegenerateSet("leakage: pi(A) must lie strictly between 0 and 1");
  }
  const Vector ia = indicator(A, n);
  Vector pt = ia;
  for (int s = 0; s < t; ++s) pt = P.matrix() * pt;
  const double l1 = (pi.values().array() * (ia - pt).cwiseAbs().array()).sum();
  return l1 / (2.0 * mass * (1.0 - mass));
}

std::pair<double, double> leakage_bounds(const StochasticKernel& P, const ProbabilityVector& pi,
                                         const std::vector<int>& A, int t) {
  const int n = P.size();
  const double mass = pi_mass(A, pi);
  if (mass <= 0.0 || mass >= 1.0) {
    throw DegenerateSet("leakage_bounds: pi(A) must lie strictly between 0 and 1");
  }
  const Matrix Pt = kernel_power(P, t).matrix();
  auto [M1, M2] = detail::mh_pair_matrices(Pt, pi);
  const SpectrumReport rep1 = detail::spectrum_impl(M1, pi, false, detail::OperatorKind::Kernel);
  const SpectrumReport rep2 = detail::spectrum_impl(M2, pi, true, detail::OperatorKind::Kernel);
  // Dominant n = 2 requirement: a simple top eigenvalue and the band floor
  // strictly below lambda_2 (lambda_2 itself may be degenerate).
  for (const SpectrumReport* rep : {&rep1, &rep2}) {
    if (rep->eigenvalues[1] >= 1.0 - 1e-12 ||
        (n > 2 && rep->eigenvalues[n - 1] >= rep->eigenvalues[1] - 1e-12)) {
      throw AssumptionViolated("leakage_bounds: no dominant n=2 split for M_i(P^t)");
    }
  }

  const Vector ia = indicator(A, n);
  const Vector ib = Vector::Ones(n) - ia;
  const double mb = 1.0 - mass;
  const Vector psi = std::sqrt(mb / mass) * ia - std::sqrt(mass / mb) * ib;
  const double gamma_a = weighted_inner_product(psi, rep2.eigenvectors.col(1), pi);

  const double lower = 1.0 - rep1.eigenvalues[1];
  const double upper = 1.0 - gamma_a * gamma_a * rep2.eigenvalues[1];
  const double l = leakage(P, pi, A, t);
  if (lower - 1e-9 > l || l > upper + 1e-9) {
    throw InvariantViolation("leakage_bounds: sandwich violated");
  }
  return {lower, upper};
}

double conductance_profile(const StochasticKernel& P, const ProbabilityVector& pi, int k,
                           int cap_two, int cap_many) {
  const int n = P.size();
  if (k < 2 || k > n) throw BadParams("conductance_profile: need 2 <= k <= n");

  const auto phi = [&](const std::vector<int>& A) {
    return 1.0 - flow(P, pi, A, A);
  };

  if (k == 2) {
    if (n > cap_two) throw TooLarge("conductance_profile: state count above the k=2 cap");
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
      std::vector<int> A;
      double mass = 0.0;
      for (int x = 0; x < n; ++x) {
        if (mask & (1u << x)) {
          A.push_back(x);
          mass += pi[x];
        }
      }
      if (mass > 0.5 + 1e-12) continue;
      best = std::min(best, phi(A));
    }
    return best;
  }

  if (n > cap_many) throw TooLarge("conductance_profile: state count above the k>=3 cap");
  // Assign every state to one of the k sets or to none; sets need not cover.
  std::vector<int> assign(n, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    std::vector<std::vector<int>> sets(k);
    for (int x = 0; x < n; ++x) {
      if (assign[x] > 0) sets[assign[x] - 1].push_back(x);
    }
    bool ok = true;
    for (const auto& s : sets) {
      if (s.empty()) {
        ok = false;
        break;
      }
    }
    if (ok) {
      double worst = 0.0;
      for (const auto& s : sets) worst = std::max(worst, phi(s));
      best = std::min(best, worst);
    }
    int pos = 0;
    while (pos < n && assign[pos] == k) {
      assign[pos] = 0;
      ++pos;
    }
    if (pos == n) break;
    ++assign[pos];
  }
  return best;
}

std::pair<double, double> cheeger_bounds(const StochasticKernel& P, const ProbabilityVector& pi,
                                         int k, double constant) {
  const int n = P.size();
  if (k < 1 || k > n) throw BadParams("cheeger_bounds: need 1 <= k <= n");
  auto [M1, M2] = detail::mh_pair_matrices(P.matrix(), pi);
  const Vector lam1 = detail::spectrum_impl(M1, pi, false, detail::OperatorKind::Kernel).eigenvalues;
  const Vector lam2 = detail::spectrum_impl(M2, pi, false, detail::OperatorKind::Kernel).eigenvalues;
  const double lower = 0.5 * (1.0 - lam1[k - 1]);
  const double upper =
      constant * std::pow(static_cast<double>(k), 4.0) * std::sqrt(std::max(0.0, 1.0 - lam2[k - 1]));
  return {lower, upper};
}

}  // namespace mhrev
