#pragma once

#include <utility>
#include <vector>

#include "mhrev/jacobi.hpp"
#include "mhrev/types.hpp"

namespace mhrev {

/// Eigenvalue magnitudes at or below this floor are treated as exact zeros
/// when taking k-th roots in gap scans; they sit below the resolution of the
/// symmetrized eigensolve.
inline constexpr double kEigNoiseFloor = 1e-13;

/// Spectrum of a pi-self-adjoint kernel, computed from the symmetrized
/// matrix D^{1/2} K D^{-1/2}. `eigenvalues` is the full spectrum sorted
/// descending; lambda/Lambda are the extremes over the subspace orthogonal
/// to constants, found by dropping the single eigenvalue closest to 1 whose
/// eigenvector has nonzero pi-mean.
struct SpectrumReport {
  Vector eigenvalues;
  Matrix eigenvectors;  ///< pi-orthonormal eigenvectors as columns (empty if not requested)
  int dropped = 0;      ///< index of the constant-direction eigenvalue
  double lambda_min = 0.0;      ///< smallest eigenvalue on L^2_0
  double lambda_max_sub = 0.0;  ///< largest eigenvalue on L^2_0
  double beta = 0.0;            ///< max(|lambda|, Lambda)
  double gamma = 0.0;           ///< right gap 1 - Lambda
  double gamma_star = 0.0;      ///< absolute gap 1 - beta
};

SpectrumReport self_adjoint_spectrum(const StochasticKernel& K, const ProbabilityVector& pi,
                                     bool want_vectors = true);
SpectrumReport self_adjoint_spectrum(const SignedKernel& K, const ProbabilityVector& pi,
                                     bool want_vectors = true);

/// Spectrum of -G for a pi-self-adjoint generator G, sorted ascending
/// (constants sit at 0). `gamma` is the smallest nonzero eigenvalue.
struct GeneratorSpectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
  int dropped = 0;
  double gamma = 0.0;
};

GeneratorSpectrum generator_spectrum(const RateGenerator& G, const ProbabilityVector& pi,
                                     bool want_vectors = false);

/// Left spectral gap of a (possibly non-reversible) generator:
/// gamma(G) = gamma((G+G*)/2), the distance from the spectrum of -G to 0.
double generator_spectral_gap(const RateGenerator& G, const ProbabilityVector& pi);

/// Right spectral gap gamma(P) = 1 - Lambda((P+P*)/2).
double right_spectral_gap(const StochasticKernel& P, const ProbabilityVector& pi);

/// Truncated pseudo-spectral gap max_{k <= n_max} gamma(P*^k P^k)/k.
/// Returns the maximum and the k attaining it.
std::pair<double, int> pseudo_spectral_gap(const StochasticKernel& P, const ProbabilityVector& pi,
                                           int n_max);

/// One step of the MH gap scan.
struct GapStep {
  int k = 0;
  double Lambda_M1 = 0.0;           ///< Lambda(M1(P^k))
  double lambda_M2 = 0.0;           ///< lambda(M2(P^k))
  double Lambda_M1_root = 0.0;      ///< sign-preserving k-th root of Lambda_M1
  double abs_lambda_M2_root = 0.0;  ///< |lambda_M2|^{1/k}
  double ps_term = 0.0;             ///< gamma(P*^k P^k)/k
  bool in_C = false;                ///< both quantities strictly below 1
};

/// Full scan over k = 1..n_max: per-step roots, the set complement of C,
/// t* = max(C^c), beta^MH / gamma^MH over C, and the truncated gamma^ps.
/// `converged` flags ||P^{n_max} - Pi||_inf < 1e-6, a heuristic indication
/// that the truncation horizon n_max was large enough.
struct GapScanResult {
  int n_max = 0;
  std::vector<GapStep> per_k;
  std::vector<int> C_complement;
  int t_star = 0;
  double beta_MH = 1.0;
  double gamma_MH = 0.0;
  double gamma_ps = 0.0;
  int gamma_ps_arg = 0;
  bool converged = false;
};

GapScanResult mh_spectral_gap(const StochasticKernel& P, const ProbabilityVector& pi,
                              int n_max = 100, double tol = 1e-9);

/// Weyl sandwich for the spectral gap:
/// 1 - U/2 <= gamma(P) <= 1 - L/2 with
/// L = max_{l+m = 2+n} lambda_l(M1) + lambda_m(M2) and
/// U = min_{j+k = 3} lambda_j(M1) + lambda_k(M2).
struct WeylSandwich {
  double L = 0.0;
  double U = 0.0;
  double gamma_lower = 0.0;
  double gamma_upper = 0.0;
};

WeylSandwich weyl_sandwich(const StochasticKernel& P, const ProbabilityVector& pi);

/// For a lazy ergodic finite kernel, checks the contraction
/// |lambda(M2(P))| <= 1 (within 1e-10). Throws PreconditionViolated when P is
/// not lazy or not irreducible.
bool lazy_contraction_check(const StochasticKernel& P, const ProbabilityVector& pi);

namespace detail {

/// Raw-matrix spectrum core shared by the typed overloads and the gap scan.
enum class OperatorKind { Kernel, Generator };
SpectrumReport spectrum_impl(const Matrix& K, const ProbabilityVector& pi, bool want_vectors,
                             OperatorKind kind);

/// M1/M2 matrices from a raw kernel matrix (no revalidation).
std::pair<Matrix, Matrix> mh_pair_matrices(const Matrix& P, const ProbabilityVector& pi);

/// Extremes of the spectrum restricted to L^2_0, eigenvalue-only fast path.
std::pair<double, double> sub_extrema(const Matrix& K, const ProbabilityVector& pi,
                                      OperatorKind kind);

/// Sign-preserving k-th root with the noise floor applied.
double gap_root(double value, int k);

}  // namespace detail

}  // namespace mhrev
