#pragma once

#include "mhrev/types.hpp"

namespace mhrev {

/// Eigen-decomposition of a real symmetric matrix, eigenvalues descending.
/// `vectors` has the matching eigenvectors as columns; empty when the solve
/// was eigenvalue-only.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

/// Cyclic Jacobi rotations with threshold skipping. Convergence is declared
/// when the off-diagonal Frobenius norm drops below 1e-13 * ||S||_F.
///
/// Throws NoConvergence when the sweep budget is exhausted and NotSelfAdjoint
/// when the input is not symmetric within `symmetry_tol`.
SymmetricEigen jacobi_eigensolve(Matrix S, bool want_vectors = true,
                                 double symmetry_tol = 1e-8, int max_sweeps = 100);

}  // namespace mhrev
