#include "qfimeter/hermitian_eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qfimeter/errors.hpp"

namespace qfimeter {

std::vector<Index> EigenSystem::manifold_of() const {
  std::vector<Index> out(static_cast<std::size_t>(dim()), 0);
  for (std::size_t g = 0; g < manifolds.size(); ++g) {
    for (Index n : manifolds[g]) out[static_cast<std::size_t>(n)] = static_cast<Index>(g);
  }
  return out;
}

double eigen_residual(const ComplexMatrix& a, const RealVector& values,
                      const ComplexMatrix& vectors) {
  double worst = 0.0;
  for (Index n = 0; n < values.size(); ++n) {
    const ComplexVector r = a * vectors.col(n) - values(n) * vectors.col(n);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double orthonormality_defect(const ComplexMatrix& vectors) {
  if (vectors.size() == 0) return 0.0;
  const ComplexMatrix g = vectors.adjoint() * vectors;
  return (g - ComplexMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

namespace {

void canonicalize_phase(Eigen::Ref<ComplexVector> v) {
  const double biggest = v.cwiseAbs().maxCoeff();
  if (biggest == 0.0) return;
  for (Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) >= (1.0 - 1e-8) * biggest) {
      v *= std::conj(v(k)) / std::abs(v(k));
      v(k) = std::abs(v(k));
      return;
    }
  }
}

}  // namespace

EigenPairs eigh(const HermitianMatrix& matrix) {
  const Index dim = matrix.dim();
  if (dim == 0) return {RealVector(0), ComplexMatrix(0, 0)};

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix.matrix(),
                                                      Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigh: Hermitian eigensolver did not converge",
                           std::numeric_limits<double>::infinity());
  }

  // Stable ascending sort: equal eigenvalues keep the solver's column order.
  const RealVector& raw_values = solver.eigenvalues();
  std::vector<Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return raw_values(a) < raw_values(b); });

  EigenPairs out{RealVector(dim), ComplexMatrix(dim, dim)};
  for (Index n = 0; n < dim; ++n) {
    const Index src = order[static_cast<std::size_t>(n)];
    out.values(n) = raw_values(src);
    out.vectors.col(n) = solver.eigenvectors().col(src);
    canonicalize_phase(out.vectors.col(n));
  }

  const double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
  const double residual = eigen_residual(matrix.matrix(), out.values, out.vectors);
  const double ortho = orthonormality_defect(out.vectors);
  if (residual > kEigenResidualTolerance * scale || ortho > kEigenResidualTolerance) {
    std::ostringstream os;
    os << "eigh: residual " << residual << " (scale " << scale << "), orthonormality defect "
       << ortho;
    throw ConvergenceError(os.str(), residual);
  }
  return out;
}

double default_degeneracy_tol(const RealVector& eigenvalues, double relative) {
  double scale = 1.0;
  if (eigenvalues.size() > 0) {
    scale = std::max({scale, std::abs(eigenvalues.maxCoeff()), std::abs(eigenvalues.minCoeff())});
  }
  return relative * scale;
}

EigenSystem resolve_degeneracies(const EigenPairs& raw, const HermitianMatrix& kprime,
                                 double degeneracy_tol) {
  if (!(degeneracy_tol > 0.0)) {
    throw PreconditionError("resolve_degeneracies: degeneracy_tol must be positive");
  }
  if (kprime.dim() != raw.values.size()) {
    throw DimensionMismatch("resolve_degeneracies: K' dimension differs from K");
  }

  EigenSystem eig{raw.values, raw.vectors, degeneracy_tol, {}};
  const Index dim = raw.values.size();
  Index start = 0;
  while (start < dim) {
    Index stop = start + 1;
    while (stop < dim && raw.values(stop) - raw.values(stop - 1) <= degeneracy_tol) ++stop;

    std::vector<Index> group(static_cast<std::size_t>(stop - start));
    std::iota(group.begin(), group.end(), start);
    const Index size = stop - start;
    if (size > 1) {
      const ComplexMatrix block = raw.vectors.middleCols(start, size);
      ComplexMatrix projected = block.adjoint() * kprime.matrix() * block;
      projected = 0.5 * (projected + projected.adjoint()).eval();
      const EigenPairs inner = eigh(HermitianMatrix(std::move(projected)));
      eig.eigenvectors.middleCols(start, size) = block * inner.vectors;
    }
    eig.manifolds.push_back(std::move(group));
    start = stop;
  }
  return eig;
}

EigenSystem without_degeneracy_resolution(const EigenPairs& raw) {
  EigenSystem eig{raw.values, raw.vectors, 0.0, {}};
  for (Index n = 0; n < raw.values.size(); ++n) eig.manifolds.push_back({n});
  return eig;
}

ComplexMatrix matrix_exponential(const EigenSystem& eig, Complex scale) {
  ComplexVector phases(eig.dim());
  for (Index n = 0; n < eig.dim(); ++n) phases(n) = std::exp(scale * eig.eigenvalues(n));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace qfimeter
