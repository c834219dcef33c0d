#include "qfimeter/qfi_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfimeter/errors.hpp"

namespace qfimeter {

namespace {

constexpr double kFisherClip = 1e-12;
constexpr double kGeneratorHermiticity = 1e-10;
constexpr double kSmallDelta = 1e-6;

double clip_fisher(double f, const char* where) {
  if (f < -kFisherClip) {
    std::ostringstream os;
    os << where << ": negative Fisher information " << f;
    throw NumericalInconsistency(os.str());
  }
  return std::max(f, 0.0);
}

void require_same_dim(Index a, Index b, const char* where) {
  if (a != b) {
    std::ostringstream os;
    os << where << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (std::abs(amps_.norm() - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "StateVector: norm " << amps_.norm() << " is not 1";
    throw PreconditionError(os.str());
  }
}

StateVector StateVector::normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw PreconditionError("StateVector: cannot normalize a zero or non-finite vector");
  }
  return StateVector(v / norm);
}

Complex phase_weight(double delta) {
  const double half = 0.5 * delta;
  // e^{i delta/2} sin(delta/2) / (delta/2); the series keeps w(0) = 1 exactly.
  const double sinc =
      std::abs(delta) < kSmallDelta ? 1.0 - half * half / 6.0 : std::sin(half) / half;
  return std::polar(sinc, half);
}

PerturbationData perturbation_data(const EigenSystem& eig, const HermitianMatrix& kprime) {
  require_same_dim(eig.dim(), kprime.dim(), "perturbation_data");
  const Index dim = eig.dim();
  const ComplexMatrix& v = eig.eigenvectors;
  const ComplexMatrix m = v.adjoint() * kprime.matrix() * v;
  const std::vector<Index> group = eig.manifold_of();

  PerturbationData pd{RealVector(dim), ComplexMatrix::Zero(dim, dim)};
  ComplexMatrix coeff = ComplexMatrix::Zero(dim, dim);
  for (Index n = 0; n < dim; ++n) {
    pd.xi(n) = m(n, n).real();
    for (Index k = 0; k < dim; ++k) {
      const double gap = eig.eigenvalues(n) - eig.eigenvalues(k);
      // Same-manifold terms vanish once K' is diagonal there; dropped.
      if (group[static_cast<std::size_t>(k)] == group[static_cast<std::size_t>(n)] || gap == 0.0) {
        continue;
      }
      coeff(k, n) = m(k, n) / gap;
    }
  }
  pd.phi = v * coeff;
  return pd;
}

LocalGenerator local_generator(const EigenSystem& eig, const HermitianMatrix& kprime) {
  require_same_dim(eig.dim(), kprime.dim(), "local_generator");
  const Index dim = eig.dim();
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix weighted = v.adjoint() * kprime.matrix() * v;
  for (Index n = 0; n < dim; ++n) {
    for (Index m = 0; m < dim; ++m) {
      weighted(m, n) *= phase_weight(eig.eigenvalues(n) - eig.eigenvalues(m));
    }
  }
  ComplexMatrix l = v * weighted * v.adjoint();

  const double scale = l.size() ? l.cwiseAbs().maxCoeff() : 0.0;
  const double defect = hermiticity_defect(l);
  if (defect > kGeneratorHermiticity * std::max(scale, 1e-300)) {
    std::ostringstream os;
    os << "local_generator: Hermiticity defect " << defect << " at scale " << scale;
    throw NumericalInconsistency(os.str());
  }
  l = 0.5 * (l + l.adjoint()).eval();
  HermitianMatrix matrix(std::move(l));

  const EigenPairs spectrum = eigh(matrix);
  const Index last = dim - 1;
  const double ell_max = spectrum.values(last);
  // First eigenvector (solver order) of the top eigenvalue.
  const double same = 1e-12 * std::max(1.0, std::abs(ell_max));
  Index top = last;
  while (top > 0 && ell_max - spectrum.values(top - 1) <= same) --top;

  return LocalGenerator{std::move(matrix), ell_max, spectrum.values(0),
                        StateVector::normalized(spectrum.vectors.col(top)),
                        StateVector::normalized(spectrum.vectors.col(0))};
}

FisherMax max_fisher(const LocalGenerator& lg, int n_atoms) {
  if (n_atoms < 1) throw PreconditionError("max_fisher: need at least one atom");
  const double spread = lg.ell_max - lg.ell_min;
  const double f = spread * spread;
  return {f, f / (static_cast<double>(n_atoms) * n_atoms)};
}

OptimalState optimal_input_state(const EigenSystem& eig_k, const LocalGenerator& lg,
                                 double rel_phase) {
  require_same_dim(eig_k.dim(), lg.matrix.dim(), "optimal_input_state");
  const ComplexMatrix back = matrix_exponential(eig_k, Complex(0.0, 1.0));
  const double spread = lg.ell_max - lg.ell_min;
  const bool degenerate =
      spread <= 1e-12 * std::max({1.0, std::abs(lg.ell_max), std::abs(lg.ell_min)});
  if (degenerate) {
    return {StateVector::normalized(back * lg.eigvec_max.amplitudes()), true};
  }
  const ComplexVector evolved =
      (lg.eigvec_max.amplitudes() + std::polar(1.0, rel_phase) * lg.eigvec_min.amplitudes()) /
      std::sqrt(2.0);
  return {StateVector::normalized(back * evolved), false};
}

ComplexVector derivative_state_pt(const EigenSystem& eig, const HermitianMatrix& kprime,
                                  const StateVector& psi0) {
  require_same_dim(eig.dim(), kprime.dim(), "derivative_state_pt");
  require_same_dim(eig.dim(), psi0.dim(), "derivative_state_pt");
  const PerturbationData pd = perturbation_data(eig, kprime);
  const ComplexMatrix& v = eig.eigenvectors;

  // sum_n e^{-i lambda_n} ( |phi_n><n| - i xi_n |n><n| + |n><phi_n| ) |psi0>
  const ComplexVector on_n = v.adjoint() * psi0.amplitudes();
  const ComplexVector on_phi = pd.phi.adjoint() * psi0.amplitudes();
  ComplexVector via_phi(eig.dim());
  ComplexVector via_n(eig.dim());
  for (Index n = 0; n < eig.dim(); ++n) {
    const Complex phase = std::polar(1.0, -eig.eigenvalues(n));
    via_phi(n) = phase * on_n(n);
    via_n(n) = phase * (Complex(0.0, -pd.xi(n)) * on_n(n) + on_phi(n));
  }
  return pd.phi * via_phi + v * via_n;
}

double fisher_for_state(const StateVector& psi, const ComplexVector& psi_prime) {
  require_same_dim(psi.dim(), psi_prime.size(), "fisher_for_state");
  const double overlap = std::norm(psi.amplitudes().dot(psi_prime));
  return clip_fisher(4.0 * (psi_prime.squaredNorm() - overlap), "fisher_for_state");
}

double fisher_via_local_generator(const StateVector& psi, const LocalGenerator& lg) {
  require_same_dim(psi.dim(), lg.matrix.dim(), "fisher_via_local_generator");
  const ComplexVector lpsi = lg.matrix.matrix() * psi.amplitudes();
  const double mean = psi.amplitudes().dot(lpsi).real();
  return clip_fisher(4.0 * (lpsi.squaredNorm() - mean * mean), "fisher_via_local_generator");
}

EigenSystem decompose(const HermitianMatrix& k, const HermitianMatrix& kprime,
                      const QfiOptions& options) {
  require_same_dim(k.dim(), kprime.dim(), "decompose");
  if (options.jitter) {
    const HermitianMatrix jittered(k.matrix() + kJitterMagnitude * kprime.matrix());
    return without_degeneracy_resolution(eigh(jittered));
  }
  const EigenPairs raw = eigh(k);
  return resolve_degeneracies(raw, kprime,
                              default_degeneracy_tol(raw.values, options.degeneracy_rel_tol));
}

PointAnalysis analyze_point(const HamiltonianParams& params, const QfiOptions& options) {
  params.validate();
  if (params.n_atoms < 1) throw InvalidParams("evaluate_point: need at least one atom");

  HermitianMatrix k = build_hamiltonian(params);
  HermitianMatrix kprime = build_kprime(params.basis());
  EigenSystem eig = decompose(k, kprime, options);
  LocalGenerator lg = local_generator(eig, kprime);
  const FisherMax fm = max_fisher(lg, params.n_atoms);
  OptimalState opt = optimal_input_state(eig, lg, options.rel_phase);
  QfiPoint point{params,     fm.fisher_max,          fm.fisher_scaled, lg.ell_max,
                 lg.ell_min, std::move(opt.state), opt.degenerate_generator};
  return PointAnalysis{params,         std::move(k),  std::move(kprime),
                       std::move(eig), std::move(lg), std::move(point)};
}

QfiPoint evaluate_point(const HamiltonianParams& params, const QfiOptions& options) {
  return analyze_point(params, options).point;
}

}  // namespace qfimeter
