#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace qfimeter {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest |a_ij - conj(a_ji)| over the matrix.
double hermiticity_defect(const ComplexMatrix& m);

/// Dense complex matrix that is Hermitian to 1e-12 relative to its largest entry.
/// The check happens once, at construction; the contents are immutable afterwards.
class HermitianMatrix {
 public:
  static constexpr double kRelativeTolerance = 1e-12;

  /// Throws PreconditionError if `m` is not square or not Hermitian.
  explicit HermitianMatrix(ComplexMatrix m);

  static HermitianMatrix zero(Index dim);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

/// The (N+1)-dimensional |J,m> basis for N bosons in two modes, J = N/2.
/// Index k holds m = J - k, so index 0 is |N,0> (all atoms left) and index N is |0,N>.
class SpinBasis {
 public:
  explicit SpinBasis(int n_atoms);

  int n_atoms() const { return n_; }
  double j() const { return 0.5 * n_; }
  Index dim() const { return n_ + 1; }
  double m(Index k) const { return j() - static_cast<double>(k); }
  std::vector<double> m_values() const;

 private:
  int n_;
};

/// Dimensionless model input. `u` is the scaled interaction N*U; the bare U is u/N.
struct HamiltonianParams {
  double tau = 0.0;
  double eps = 0.0;
  double u = 0.0;
  int n_atoms = 0;

  /// Throws InvalidParams on non-finite fields, negative N, or u != 0 with N = 0.
  void validate() const;
  double bare_interaction() const;
  SpinBasis basis() const { return SpinBasis(n_atoms); }
};

HermitianMatrix build_jx(const SpinBasis& basis);
HermitianMatrix build_jy(const SpinBasis& basis);
HermitianMatrix build_jz(const SpinBasis& basis);

/// K = -tau J_x + eps J_z + (u/N) J_z^2 in the |J,m> basis.
HermitianMatrix build_hamiltonian(const HamiltonianParams& p);

/// dK/d(eps) = J_z.
HermitianMatrix build_kprime(const SpinBasis& basis);

}  // namespace qfimeter
