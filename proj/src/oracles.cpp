#include "qfimeter/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qfimeter/errors.hpp"

namespace qfimeter::oracles {

namespace {

ComplexVector evolve(HamiltonianParams params, double eps, const StateVector& psi0) {
  params.eps = eps;
  const EigenSystem eig = without_degeneracy_resolution(eigh(build_hamiltonian(params)));
  return matrix_exponential(eig, Complex(0.0, -1.0)) * psi0.amplitudes();
}

void check_step(double dtheta) {
  if (!(dtheta >= 1e-8 && dtheta <= 1e-2)) {
    throw PreconditionError("derivative_state_fd: dtheta must lie in [1e-8, 1e-2]");
  }
}

}  // namespace

ComplexVector derivative_state_fd(const HamiltonianParams& params, const StateVector& psi0,
                                  double dtheta) {
  check_step(dtheta);
  const ComplexVector plus = evolve(params, params.eps + dtheta, psi0);
  const ComplexVector minus = evolve(params, params.eps - dtheta, psi0);
  return (plus - minus) / (2.0 * dtheta);
}

ComplexVector derivative_state_forward(const HamiltonianParams& params, const StateVector& psi0,
                                       double dtheta) {
  check_step(dtheta);
  const ComplexVector plus = evolve(params, params.eps + dtheta, psi0);
  const ComplexVector here = evolve(params, params.eps, psi0);
  return (plus - here) / dtheta;
}

HermitianMatrix quadrature_local_generator(const EigenSystem& eig, const HermitianMatrix& kprime,
                                           int nodes) {
  if (nodes < 3 || nodes % 2 == 0) {
    throw PreconditionError("quadrature_local_generator: Simpson needs an odd node count >= 3");
  }
  if (eig.dim() != kprime.dim()) {
    throw DimensionMismatch("quadrature_local_generator: K' dimension differs from K");
  }
  const Index dim = eig.dim();
  const ComplexMatrix& v = eig.eigenvectors;
  const double h = 1.0 / (nodes - 1);

  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  ComplexVector phases(dim);
  for (int i = 0; i < nodes; ++i) {
    const double x = i * h;
    for (Index n = 0; n < dim; ++n) phases(n) = std::polar(1.0, -x * eig.eigenvalues(n));
    const ComplexMatrix u = v * phases.asDiagonal() * v.adjoint();
    const double weight = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum.noalias() += weight * (u * kprime.matrix() * u.adjoint());
  }
  sum *= h / 3.0;
  sum = 0.5 * (sum + sum.adjoint()).eval();
  return HermitianMatrix(std::move(sum));
}

BoundsReport spectrum_respects_generator_bounds(const LocalGenerator& lg, int n_atoms) {
  const double half = 0.5 * n_atoms;
  const double lower = lg.ell_min + half;
  const double upper = half - lg.ell_max;
  return {lower >= -kBoundsSlack && upper >= -kBoundsSlack, lower, upper};
}

StateVector random_state(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(dim);
  for (Index k = 0; k < dim; ++k) {
    const double re = normal(rng);
    v(k) = Complex(re, normal(rng));
  }
  return StateVector::normalized(v);
}

double max_fisher_over_states(const LocalGenerator& lg, const std::vector<StateVector>& states) {
  if (states.empty()) throw PreconditionError("max_fisher_over_states: no states");
  double best = 0.0;
  for (const StateVector& s : states) best = std::max(best, fisher_via_local_generator(s, lg));
  return best;
}

double random_state_fisher_sample(const HamiltonianParams& params, int n_samples,
                                  std::uint64_t seed) {
  if (n_samples < 1) throw PreconditionError("random_state_fisher_sample: n_samples >= 1");
  const PointAnalysis pa = analyze_point(params);
  std::mt19937_64 seeds(seed);
  double best = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const StateVector psi = random_state(pa.kprime.dim(), seeds());
    best = std::max(best, fisher_via_local_generator(psi, pa.generator));
  }
  return best;
}

}  // namespace qfimeter::oracles
