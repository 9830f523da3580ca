#include "mhrev/expansion.hpp"

#include <cmath>
#include <string>

#include "mhrev/kernel.hpp"
#include "mhrev/spectra.hpp"

namespace mhrev {

namespace {

constexpr double kTieTol = 1e-14;

struct ExpansionParts {
  Matrix Pn;
  Matrix Pn_star;
  Matrix R1;  // eigen-reconstruction of M1(P^n)
  Matrix R2;  // eigen-reconstruction of M2(P^n)
};

Matrix eigen_reconstruction(const SpectrumReport& rep, const ProbabilityVector& pi) {
  const int n = static_cast<int>(rep.eigenvalues.size());
  Matrix R = rep.eigenvectors * rep.eigenvalues.asDiagonal() * rep.eigenvectors.transpose();
  for (int y = 0; y < n; ++y) R.col(y) *= pi[y];
  return R;
}

ExpansionParts build_parts(const StochasticKernel& P, const ProbabilityVector& pi, int n) {
  ExpansionParts parts;
  parts.Pn = kernel_power(P, n).matrix();
  parts.Pn_star = pi_adjoint(parts.Pn, pi);
  auto [M1, M2] = detail::mh_pair_matrices(parts.Pn, pi);
  parts.R1 = eigen_reconstruction(
      detail::spectrum_impl(M1, pi, true, detail::OperatorKind::Kernel), pi);
  parts.R2 = eigen_reconstruction(
      detail::spectrum_impl(M2, pi, true, detail::OperatorKind::Kernel), pi);
  return parts;
}

// A_x membership is read off P^n, not P.
bool in_region(const ExpansionParts& parts, int x, int y) {
  return x != y && parts.Pn(x, y) - parts.Pn_star(x, y) > kTieTol;
}

StochasticKernel assemble(const ExpansionParts& parts, const Matrix& target, bool reversal,
                          const char* who) {
  const int n = static_cast<int>(parts.Pn.rows());
  Matrix out(n, n);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) {
        out(x, y) = 0.5 * (parts.R1(x, x) + parts.R2(x, x));
      } else if (in_region(parts, x, y) != reversal) {
        out(x, y) = parts.R2(x, y);
      } else {
        out(x, y) = parts.R1(x, y);
      }
    }
  }
  const double err = (out - target).cwiseAbs().maxCoeff();
  if (err > 1e-8) {
    throw ReconstructionMismatch(std::string(who) + ": max entry deviation " +
                                 std::to_string(err));
  }
  return StochasticKernel(std::move(out), 1e-9);
}

}  // namespace

StochasticKernel pseudospectral_reconstruct(const StochasticKernel& P,
                                            const ProbabilityVector& pi, int n) {
  const ExpansionParts parts = build_parts(P, pi, n);
  return assemble(parts, parts.Pn, /*reversal=*/false, "pseudospectral_reconstruct");
}

StochasticKernel pseudospectral_reconstruct_reversal(const StochasticKernel& P,
                                                     const ProbabilityVector& pi, int n) {
  const ExpansionParts parts = build_parts(P, pi, n);
  return assemble(parts, parts.Pn_star, /*reversal=*/true,
                  "pseudospectral_reconstruct_reversal");
}

Vector expansion_apply(const StochasticKernel& P, const ProbabilityVector& pi, int n,
                       const Vector& f) {
  if (f.size() != P.size()) {
    throw DimensionMismatch("expansion_apply: f has wrong dimension");
  }
  const ExpansionParts parts = build_parts(P, pi, n);
  auto [M1, M2] = detail::mh_pair_matrices(parts.Pn, pi);
  const SpectrumReport rep1 = detail::spectrum_impl(M1, pi, true, detail::OperatorKind::Kernel);
  const SpectrumReport rep2 = detail::spectrum_impl(M2, pi, true, detail::OperatorKind::Kernel);
  const int sz = P.size();
  Vector result(sz);
  for (int x = 0; x < sz; ++x) {
    Vector f_region = Vector::Zero(sz);
    Vector f_complement = Vector::Zero(sz);
    for (int y = 0; y < sz; ++y) {
      if (y == x) continue;
      if (in_region(parts, x, y)) {
        f_region[y] = f[y];
      } else {
        f_complement[y] = f[y];
      }
    }
    double acc = 0.5 * (parts.R1(x, x) + parts.R2(x, x)) * f[x];
    for (int j = 0; j < sz; ++j) {
      acc += rep1.eigenvalues[j] * rep1.eigenvectors(x, j) *
             weighted_inner_product(f_complement, rep1.eigenvectors.col(j), pi);
      acc += rep2.eigenvalues[j] * rep2.eigenvectors(x, j) *
             weighted_inner_product(f_region, rep2.eigenvectors.col(j), pi);
    }
    result[x] = acc;
  }
  return result;
}

}  // namespace mhrev
