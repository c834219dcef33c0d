#pragma once

#include <vector>

#include "qfimeter/spin_model.hpp"

namespace qfimeter {

/// Output of a plain Hermitian eigendecomposition: ascending eigenvalues and
/// orthonormal eigenvector columns.
struct EigenPairs {
  RealVector values;
  ComplexMatrix vectors;
};

/// Eigendecomposition of K whose eigenvectors inside every (near-)degenerate
/// manifold also diagonalize K'. `manifolds` partitions 0..dim-1 into runs of
/// consecutive indices; singletons are nondegenerate levels.
struct EigenSystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
  double degeneracy_tol = 0.0;
  std::vector<std::vector<Index>> manifolds;

  Index dim() const { return eigenvalues.size(); }
  /// manifold_of()[n] is the index into `manifolds` containing level n.
  std::vector<Index> manifold_of() const;
};

/// Relative residual bound enforced on every decomposition.
inline constexpr double kEigenResidualTolerance = 1e-10;

/// Ascending eigenvalues, orthonormal eigenvectors. Each eigenvector's phase is fixed
/// so that its first largest-magnitude component is real and positive.
/// Throws ConvergenceError when the solver fails or the residual bound is missed.
EigenPairs eigh(const HermitianMatrix& matrix);

/// 1e-8 * max(|lambda_max|, |lambda_min|, 1).
double default_degeneracy_tol(const RealVector& eigenvalues, double relative = 1e-8);

/// Groups consecutive eigenvalues whose gap is <= degeneracy_tol and rotates each group
/// so the projected K' block is diagonal. Vectors outside groups are untouched.
EigenSystem resolve_degeneracies(const EigenPairs& raw, const HermitianMatrix& kprime,
                                 double degeneracy_tol);

/// Wraps `raw` as an EigenSystem with singleton manifolds (no rotation).
EigenSystem without_degeneracy_resolution(const EigenPairs& raw);

/// V diag(exp(scale * lambda)) V^dagger.
ComplexMatrix matrix_exponential(const EigenSystem& eig, Complex scale);

/// max_n ||A v_n - lambda_n v_n||_2.
double eigen_residual(const ComplexMatrix& a, const RealVector& values,
                      const ComplexMatrix& vectors);

/// max |V^dagger V - I|.
double orthonormality_defect(const ComplexMatrix& vectors);

}  // namespace qfimeter
