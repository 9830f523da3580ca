#include "mhrev/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace mhrev {

namespace {

double off_diagonal_norm2(const Matrix& A) {
  double s = 0.0;
  const int n = static_cast<int>(A.rows());
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      s += 2.0 * A(p, q) * A(p, q);
    }
  }
  return s;
}

}  // namespace

SymmetricEigen jacobi_eigensolve(Matrix S, bool want_vectors, double symmetry_tol,
                                 int max_sweeps) {
  const int n = static_cast<int>(S.rows());
  if (S.cols() != n || n == 0) {
    throw InvariantViolation("jacobi_eigensolve: matrix must be square");
  }
  const double scale = std::max(1.0, S.cwiseAbs().maxCoeff());
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > symmetry_tol * scale) {
    throw NotSelfAdjoint("jacobi_eigensolve: input is not symmetric");
  }
  S = 0.5 * (S + S.transpose()).eval();

  Matrix V;
  if (want_vectors) V = Matrix::Identity(n, n);

  const double norm_f = std::max(S.norm(), 1e-300);
  const double target2 = (1e-13 * norm_f) * (1e-13 * norm_f);
  const double skip = 1e-13 * norm_f / (4.0 * n);

  bool converged = (n == 1) || off_diagonal_norm2(S) <= target2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = S(p, q);
        if (std::abs(apq) <= skip) continue;
        const double app = S(p, p);
        const double aqq = S(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e10) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // Two-sided rotation in the (p, q) plane.
        const Vector rp = S.row(p);
        const Vector rq = S.row(q);
        S.row(p) = c * rp.transpose() - s * rq.transpose();
        S.row(q) = s * rp.transpose() + c * rq.transpose();
        const Vector cp = S.col(p);
        const Vector cq = S.col(q);
        S.col(p) = c * cp - s * cq;
        S.col(q) = s * cp + c * cq;
        S(p, p) = app - t * apq;
        S(q, q) = aqq + t * apq;
        S(p, q) = 0.0;
        S(q, p) = 0.0;

        if (want_vectors) {
          const Vector vp = V.col(p);
          const Vector vq = V.col(q);
          V.col(p) = c * vp - s * vq;
          V.col(q) = s * vp + c * vq;
        }
      }
    }
    converged = off_diagonal_norm2(S) <= target2;
  }
  if (!converged) {
    throw NoConvergence("jacobi_eigensolve: sweep budget exhausted");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return S(a, a) > S(b, b); });

  SymmetricEigen out;
  out.values.resize(n);
  if (want_vectors) out.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = S(order[i], order[i]);
    if (want_vectors) out.vectors.col(i) = V.col(order[i]);
  }
  return out;
}

}  // namespace mhrev
