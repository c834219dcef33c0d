#include "qfimeter/spin_model.hpp"

#include <cmath>
#include <sstream>

#include "qfimeter/errors.hpp"

namespace qfimeter {

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw PreconditionError("HermitianMatrix: matrix is not square");
  }
  if (m_.size() == 0) return;
  if (!m_.allFinite()) {
    throw PreconditionError("HermitianMatrix: non-finite entry");
  }
  const double scale = m_.cwiseAbs().maxCoeff();
  const double defect = hermiticity_defect(m_);
  if (defect > kRelativeTolerance * scale) {
    std::ostringstream os;
    os << "HermitianMatrix: Hermiticity defect " << defect << " exceeds "
       << kRelativeTolerance << " x " << scale;
    throw PreconditionError(os.str());
  }
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

SpinBasis::SpinBasis(int n_atoms) : n_(n_atoms) {
  if (n_atoms < 0) throw InvalidParams("SpinBasis: negative atom number");
}

std::vector<double> SpinBasis::m_values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (Index k = 0; k < dim(); ++k) out.push_back(m(k));
  return out;
}

void HamiltonianParams::validate() const {
  if (!std::isfinite(tau) || !std::isfinite(eps) || !std::isfinite(u)) {
    throw InvalidParams("HamiltonianParams: tau, eps and u must be finite");
  }
  if (n_atoms < 0) throw InvalidParams("HamiltonianParams: negative atom number");
  if (n_atoms == 0 && u != 0.0) {
    throw InvalidParams("HamiltonianParams: u != 0 requires at least one atom");
  }
}

double HamiltonianParams::bare_interaction() const {
  return n_atoms == 0 ? 0.0 : u / n_atoms;
}

namespace {

// <J,m+1|J_+|J,m> for the state at index k (m = J - k), landing at index k-1.
double raising_element(const SpinBasis& b, Index k) {
  const double j = b.j();
  const double m = b.m(k);
  return std::sqrt(j * (j + 1.0) - m * (m + 1.0));
}

}  // namespace

HermitianMatrix build_jx(const SpinBasis& basis) {
  ComplexMatrix m = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (Index k = 1; k < basis.dim(); ++k) {
    const double a = 0.5 * raising_element(basis, k);
    m(k - 1, k) = a;
    m(k, k - 1) = a;
  }
  return HermitianMatrix(std::move(m));
}

HermitianMatrix build_jy(const SpinBasis& basis) {
  // J_y = (J_+ - J_-) / 2i
  ComplexMatrix m = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (Index k = 1; k < basis.dim(); ++k) {
    const double a = 0.5 * raising_element(basis, k);
    m(k - 1, k) = Complex(0.0, -a);
    m(k, k - 1) = Complex(0.0, a);
  }
  return HermitianMatrix(std::move(m));
}

HermitianMatrix build_jz(const SpinBasis& basis) {
  ComplexMatrix m = ComplexMatrix::Zero(basis.dim(), basis.dim());
  for (Index k = 0; k < basis.dim(); ++k) m(k, k) = basis.m(k);
  return HermitianMatrix(std::move(m));
}

HermitianMatrix build_hamiltonian(const HamiltonianParams& p) {
  p.validate();
  const SpinBasis basis = p.basis();
  if (basis.n_atoms() == 0) return HermitianMatrix::zero(1);

  const double bare_u = p.bare_interaction();
  ComplexMatrix m = -p.tau * build_jx(basis).matrix();
  for (Index k = 0; k < basis.dim(); ++k) {
    const double mk = basis.m(k);
    m(k, k) = p.eps * mk + bare_u * mk * mk;
  }
  return HermitianMatrix(std::move(m));
}

HermitianMatrix build_kprime(const SpinBasis& basis) { return build_jz(basis); }

}  // namespace qfimeter
