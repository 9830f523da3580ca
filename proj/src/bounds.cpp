#include "mhrev/bounds.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <string>

#include "mhrev/kernel.hpp"
#include "mhrev/models.hpp"

namespace mhrev {

namespace {

double row_tv(const Matrix& K, int x, const ProbabilityVector& pi) {
  double s = 0.0;
  for (int y = 0; y < K.cols(); ++y) s += std::abs(K(x, y) - pi[y]);
  return 0.5 * s;
}

Vector centered(const Vector& f, const ProbabilityVector& pi) {
  const double mean = (f.array() * pi.values().array()).sum();
  return f.array() - mean;
}

void require_gap(const GapScanResult& scan, const char* who) {
  if (!(scan.gamma_MH > 0.0)) {
    throw ZeroGap(std::string(who) + ": gamma^MH is not positive");
  }
}

}  // namespace

double tv_distance(const Vector& mu, const Vector& nu) {
  if (mu.size() != nu.size()) {
    throw DimensionMismatch("tv_distance: dimensions differ");
  }
  return 0.5 * (mu - nu).cwiseAbs().sum();
}

MixingProfile exact_mixing_profile(const StochasticKernel& P, const ProbabilityVector& pi,
                                   int n_max) {
  if (n_max < 1) throw BadParams("exact_mixing_profile: n_max must be >= 1");
  MixingProfile profile;
  profile.d.reserve(n_max);
  Matrix Pk = P.matrix();
  for (int k = 1; k <= n_max; ++k) {
    if (k > 1) {
      Pk = (Pk * P.matrix()).eval();
      for (int x = 0; x < Pk.rows(); ++x) {
        const double s = Pk.row(x).sum();
        if (std::abs(s - 1.0) > kStructuralTol) Pk.row(x) /= s;
      }
    }
    double worst = 0.0;
    for (int x = 0; x < P.size(); ++x) worst = std::max(worst, row_tv(Pk, x, pi));
    profile.d.push_back(worst);
  }
  for (size_t i = 1; i < profile.d.size(); ++i) {
    if (profile.d[i] > profile.d[i - 1] + 1e-12) {
      profile.monotone = false;
      break;
    }
  }
  return profile;
}

int exact_mixing_time(const MixingProfile& profile, double epsilon) {
  for (size_t i = 0; i < profile.d.size(); ++i) {
    if (profile.d[i] <= epsilon) return static_cast<int>(i + 1);
  }
  return -1;
}

MixingTimeBound mixing_time_bound(const GapScanResult& scan, const ProbabilityVector& pi,
                                  double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw BadParams("mixing_time_bound: epsilon must be in (0,1)");
  }
  require_gap(scan, "mixing_time_bound");
  const double log_term = std::log(1.0 / (epsilon * pi.min())) / scan.gamma_MH;
  return {scan.t_star + log_term, log_term};
}

TvCrossSlacks tv_cross_bounds_check(const StochasticKernel& P, const ProbabilityVector& pi,
                                    int n) {
  const Matrix Pn = kernel_power(P, n).matrix();
  const Matrix Pn_star = pi_adjoint(Pn, pi);
  auto [M1, M2] = detail::mh_pair_matrices(Pn, pi);

  TvCrossSlacks slacks;
  double s1 = std::numeric_limits<double>::infinity();
  double s2 = s1, s3 = s1, s4 = s1;
  for (int x = 0; x < P.size(); ++x) {
    const double tp = row_tv(Pn, x, pi);
    const double tps = row_tv(Pn_star, x, pi);
    const double t1 = row_tv(M1, x, pi);
    const double t2 = row_tv(M2, x, pi);
    s1 = std::min(s1, 1.5 * t1 + 1.5 * t2 - tp);
    s2 = std::min(s2, 1.5 * t1 + 1.5 * t2 - tps);
    s3 = std::min(s3, 2.0 * tp + 2.0 * tps - t1);
    s4 = std::min(s4, 3.0 * tp + 3.0 * tps - t2);
  }
  slacks.forward = s1;
  slacks.reversed = s2;
  slacks.first_kernel = s3;
  slacks.second_kernel = s4;
  return slacks;
}

std::pair<double, double> operator_norm_bound_check(const StochasticKernel& P,
                                                    const ProbabilityVector& pi) {
  using detail::OperatorKind;
  const Matrix mult = pi_adjoint(P.matrix(), pi) * P.matrix();
  const double lam_mult = detail::sub_extrema(mult, pi, OperatorKind::Kernel).second;
  const double lhs = std::sqrt(std::max(0.0, lam_mult));

  auto [M1, M2] = detail::mh_pair_matrices(P.matrix(), pi);
  const auto e1 = detail::sub_extrema(M1, pi, OperatorKind::Kernel);
  const auto e2 = detail::sub_extrema(M2, pi, OperatorKind::Kernel);
  const double beta1 = std::max(std::abs(e1.first), e1.second);
  const double beta2 = std::max(std::abs(e2.first), e2.second);

  const Matrix P2 = kernel_power(P, 2).matrix();
  auto [M1sq, M2sq] = detail::mh_pair_matrices(P2, pi);
  const double lam1 = detail::sub_extrema(M1sq, pi, OperatorKind::Kernel).first;
  const double lam2 = detail::sub_extrema(M2sq, pi, OperatorKind::Kernel).first;

  const double rhs = beta1 + beta2 + std::sqrt(std::abs(lam1)) + std::sqrt(std::abs(lam2));
  return {lhs, rhs};
}

std::pair<double, double> variance_bound(const StochasticKernel& P, const ProbabilityVector& pi,
                                         const GapScanResult& scan, const Vector& f, int n) {
  if (n < 1) throw BadParams("variance_bound: n must be >= 1");
  if (f.size() != P.size()) throw DimensionMismatch("variance_bound: f has wrong dimension");
  require_gap(scan, "variance_bound");
  const Vector f0 = centered(f, pi);
  const double vf = weighted_inner_product(f0, f0, pi);
  const double bound =
      n * vf * (static_cast<double>(scan.C_complement.size()) + 2.0 / scan.gamma_MH);

  double exact = n * vf;
  Vector g = f0;
  for (int d = 1; d <= n - 1; ++d) {
    g = P.matrix() * g;
    exact += 2.0 * (n - d) * weighted_inner_product(f0, g, pi);
  }
  if (exact > bound + 1e-9) {
    throw InvariantViolation("variance_bound: exact variance exceeds the bound");
  }
  return {bound, exact};
}

std::pair<double, double> asymptotic_variance_bound(const StochasticKernel& P,
                                                    const ProbabilityVector& pi,
                                                    const GapScanResult& scan, const Vector& f) {
  if (f.size() != P.size()) {
    throw DimensionMismatch("asymptotic_variance_bound: f has wrong dimension");
  }
  require_gap(scan, "asymptotic_variance_bound");
  const int n_states = P.size();
  const Vector f0 = centered(f, pi);
  const double vf = weighted_inner_product(f0, f0, pi);
  const double cc = static_cast<double>(scan.C_complement.size());
  const double bound =
      4.0 * vf *
      std::pow(1.0 + cc + 4.0 * std::pow(scan.beta_MH, cc + 1.0) / scan.gamma_MH, 2.0);

  // sigma_as^2 via the resolvent of P - Pi.
  const Matrix R = P.matrix() - stationary_projector(pi);
  const Matrix A = Matrix::Identity(n_states, n_states) - R;
  const Vector rf = R * f0;
  const Vector x = A.partialPivLu().solve(rf);
  const double resid = (A * x - rf).cwiseAbs().maxCoeff();
  if (!x.allFinite() || resid > 1e-12 * std::max(1.0, rf.cwiseAbs().maxCoeff())) {
    throw SingularResolvent("asymptotic_variance_bound: resolvent solve failed");
  }
  const double sigma2 = vf + 2.0 * weighted_inner_product(f0, x, pi);

  // Var_n - n sigma^2 stabilizes once the covariance tail is negligible.
  const double floor = 1e-13 * std::max(vf, 1e-300);
  double s1 = 0.0;  // sum of c_d
  double s2 = 0.0;  // sum of d * c_d
  Vector g = f0;
  long n_steps = 1;
  for (long d = 1; d <= 200000; ++d) {
    g = P.matrix() * g;
    const double cd = weighted_inner_product(f0, g, pi);
    s1 += cd;
    s2 += d * cd;
    n_steps = d + 1;
    if (d >= 32 && std::abs(cd) < floor) break;
  }
  const double var_n = n_steps * vf + 2.0 * (n_steps * s1 - s2);
  const double exact_gap = std::abs(var_n - n_steps * sigma2);
  if (exact_gap > bound + 1e-9) {
    throw InvariantViolation("asymptotic_variance_bound: gap exceeds the bound");
  }
  return {bound, exact_gap};
}

std::pair<double, double> heterogeneous_variance_bound(const StochasticKernel& P,
                                                       const ProbabilityVector& pi,
                                                       const GapScanResult& scan,
                                                       const std::vector<Vector>& fs) {
  if (fs.empty()) throw BadParams("heterogeneous_variance_bound: no functions given");
  require_gap(scan, "heterogeneous_variance_bound");
  const int n = static_cast<int>(fs.size());
  std::vector<Vector> f0(n);
  double sum_var = 0.0;
  for (int i = 0; i < n; ++i) {
    if (fs[i].size() != P.size()) {
      throw DimensionMismatch("heterogeneous_variance_bound: f has wrong dimension");
    }
    f0[i] = centered(fs[i], pi);
    sum_var += weighted_inner_product(f0[i], f0[i], pi);
  }
  const double bound =
      sum_var * (static_cast<double>(scan.C_complement.size()) + 2.0 / scan.gamma_MH);

  double exact = sum_var;
  for (int j = 1; j < n; ++j) {
    Vector g = f0[j];
    for (int i = j - 1; i >= 0; --i) {
      g = P.matrix() * g;
      exact += 2.0 * weighted_inner_product(f0[i], g, pi);
    }
  }
  if (exact > bound + 1e-9) {
    throw InvariantViolation("heterogeneous_variance_bound: exact variance exceeds the bound");
  }
  return {bound, exact};
}

namespace {

BirthDeath build_base(const VortexModel& m) {
  switch (m.kind) {
    case VortexModel::Kind::Ehrenfest:
      return birth_death_generator(BirthDeathSpec::ehrenfest(m.ehrenfest_n, m.p));
    case VortexModel::Kind::MM1:
      return birth_death_generator(BirthDeathSpec::mm1(m.lambda, m.mu, m.truncation));
    case VortexModel::Kind::MMInfinity:
      return birth_death_generator(BirthDeathSpec::mm_infinity(m.lambda, m.truncation));
    case VortexModel::Kind::GWI:
      return birth_death_generator(BirthDeathSpec::gwi(m.lambda, m.r, m.truncation));
  }
  throw BadParams("vortex_gap_bounds: unknown model kind");
}

}  // namespace

VortexGapBounds vortex_gap_bounds(const VortexModel& model) {
  const int nv = model.vortex_dim;
  if (nv < 2) throw BadParams("vortex_gap_bounds: vortex dimension must be >= 2");
  BirthDeath base = build_base(model);
  if (base.tail_mass > 1e-8) {
    throw BadTruncation("vortex_gap_bounds: truncated tail mass " +
                        std::to_string(base.tail_mass) + " exceeds 1e-8");
  }
  if (nv > base.stationary.size()) {
    throw BadParams("vortex_gap_bounds: vortex dimension exceeds the state count");
  }

  const RateGenerator V = cyclic_vortex(nv, base.stationary);
  const RateGenerator G(base.generator.matrix() + V.matrix(), kSolvedTol);
  const ProbabilityVector& pi = base.stationary;

  VortexGapBounds out;
  out.gamma_exact = generator_spectral_gap(G, pi);
  out.gamma_base_truncated = generator_spectral_gap(base.generator, pi);
  out.truncation_caveat = model.kind != VortexModel::Kind::Ehrenfest;

  const double vortex_term = 1.0 - std::cos(2.0 * M_PI / nv);
  switch (model.kind) {
    case VortexModel::Kind::Ehrenfest: {
      out.lower = 1.0;
      out.upper = 1.0 + 2.0 * vortex_term *
                            std::max(std::pow(model.p, -model.ehrenfest_n),
                                     std::pow(1.0 - model.p, -model.ehrenfest_n));
      break;
    }
    case VortexModel::Kind::MM1: {
      out.lower = std::pow(std::sqrt(model.mu) - std::sqrt(model.lambda), 2.0);
      out.upper = out.lower + 2.0 / (1.0 - model.lambda / model.mu) *
                                  std::pow(model.mu / model.lambda, nv - 1) * vortex_term;
      break;
    }
    case VortexModel::Kind::MMInfinity: {
      out.lower = 1.0;
      double worst = 0.0;
      for (int i = 0; i <= nv; ++i) {
        worst = std::max(worst, std::tgamma(i + 1.0) * std::pow(model.lambda, -i));
      }
      out.upper = 1.0 + 2.0 * vortex_term * std::exp(model.lambda) * worst;
      break;
    }
    case VortexModel::Kind::GWI: {
      out.lower = 1.0 - model.lambda;
      double worst = 0.0;
      for (int i = 0; i <= nv; ++i) {
        worst = std::max(worst, std::tgamma(model.r) * std::tgamma(i + 1.0) /
                                    std::tgamma(model.r + i) *
                                    std::pow(1.0 - model.lambda, -model.r) *
                                    std::pow(model.lambda, -i));
      }
      out.upper = 1.0 - model.lambda + 2.0 * vortex_term * worst;
      break;
    }
  }

  if (out.lower - 1e-9 > out.gamma_exact) {
    throw InvariantViolation("vortex_gap_bounds: lower bound exceeds the exact gap");
  }
  out.upper_holds_on_truncation = out.gamma_exact <= out.upper + 1e-9;
  return out;
}

}  // namespace mhrev
