#include "qfimeter/analytic_limits.hpp"

#include <cmath>

#include "qfimeter/errors.hpp"

namespace qfimeter {

TiltedFrame tilted_frame(double tau, double eps) {
  const double t = std::hypot(tau, eps);
  if (t == 0.0) throw InvalidParams("tilted_frame: tau = eps = 0 leaves the frame undefined");
  return {t, eps / t, -tau / t};
}

double fisher_limit_no_interaction(const HamiltonianParams& params) {
  params.validate();
  if (params.u != 0.0) throw InvalidParams("fisher_limit_no_interaction: requires u = 0");
  const TiltedFrame frame = tilted_frame(params.tau, params.eps);
  const double n = params.n_atoms;
  return n * n * frame.cos_phi * frame.cos_phi;
}

double fisher_limit_strong_interaction(int n_atoms) {
  if (n_atoms < 1) throw InvalidParams("fisher_limit_strong_interaction: need N >= 1");
  return static_cast<double>(n_atoms) * n_atoms;
}

HermitianMatrix local_generator_large_scaling(const EigenSystem& eig,
                                              const HermitianMatrix& kprime) {
  if (eig.dim() != kprime.dim()) {
    throw DimensionMismatch("local_generator_large_scaling: K' dimension differs from K");
  }
  const ComplexMatrix& v = eig.eigenvectors;
  const ComplexMatrix m = v.adjoint() * kprime.matrix() * v;
  const RealVector diagonal = m.diagonal().real();
  ComplexMatrix l = v * diagonal.cast<Complex>().asDiagonal() * v.adjoint();
  l = 0.5 * (l + l.adjoint()).eval();
  return HermitianMatrix(std::move(l));
}

double noon_ground_state_overlap(const HamiltonianParams& params) {
  params.validate();
  if (std::abs(params.eps) >= 1e-10) {
    throw InvalidParams("noon_ground_state_overlap: requires eps = 0");
  }
  if (params.u >= 0.0) throw InvalidParams("noon_ground_state_overlap: requires u < 0");

  const EigenPairs pairs = eigh(build_hamiltonian(params));
  const double tol = default_degeneracy_tol(pairs.values);
  Index ground = 1;
  while (ground < pairs.values.size() && pairs.values(ground) - pairs.values(0) <= tol) ++ground;

  // Projector P onto the ground manifold; best phase gives (P_00 + P_NN + 2|P_0N|) / 2.
  const Index last = pairs.values.size() - 1;
  const ComplexMatrix g = pairs.vectors.leftCols(ground);
  const double p00 = g.row(0).squaredNorm();
  const double pnn = g.row(last).squaredNorm();
  const double p0n = std::abs(g.row(0).dot(g.row(last)));
  return 0.5 * (p00 + pnn + 2.0 * p0n);
}

QfiPoint fisher_eps_zero(const HamiltonianParams& params, const QfiOptions& options) {
  HamiltonianParams at_zero = params;
  at_zero.eps = 0.0;
  return evaluate_point(at_zero, options);
}

}  // namespace qfimeter
