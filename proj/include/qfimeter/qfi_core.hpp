#pragma once

#include "qfimeter/hermitian_eig.hpp"
#include "qfimeter/spin_model.hpp"

namespace qfimeter {

/// Normalized pure state in the |J,m> basis (norm 1 within 1e-12).
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws PreconditionError unless ||amplitudes|| = 1 within tolerance.
  explicit StateVector(ComplexVector amplitudes);

  /// Divides by the norm first. Throws PreconditionError for the zero vector.
  static StateVector normalized(const ComplexVector& v);

  Index dim() const { return amps_.size(); }
  const ComplexVector& amplitudes() const { return amps_; }
  Complex operator()(Index k) const { return amps_(k); }

 private:
  ComplexVector amps_;
};

/// First-order perturbation data for K + d(theta) K' in the eigenbasis of K.
/// xi(n) = <n|K'|n>; column n of `phi` is the eigenvector correction |phi_n>,
/// with same-manifold terms dropped.
struct PerturbationData {
  RealVector xi;
  ComplexMatrix phi;
};

struct LocalGenerator {
  HermitianMatrix matrix;
  double ell_max;
  double ell_min;
  StateVector eigvec_max;
  StateVector eigvec_min;
};

struct FisherMax {
  double fisher_max;
  double fisher_scaled;
};

struct OptimalState {
  StateVector state;
  /// True when ell_max == ell_min; any state is then optimal and `state` is the
  /// image of |ell_max> alone.
  bool degenerate_generator;
};

struct QfiPoint {
  HamiltonianParams params;
  double fisher_max;
  double fisher_scaled;
  double ell_max;
  double ell_min;
  StateVector optimal_state;
  bool degenerate_generator;
};

struct QfiOptions {
  /// Degeneracy threshold relative to max(|lambda|, 1).
  double degeneracy_rel_tol = 1e-8;
  /// Break symmetries with a 1e-10 J_z term instead of degenerate perturbation theory.
  bool jitter = false;
  double rel_phase = 0.0;
};

inline constexpr double kJitterMagnitude = 1e-10;

/// w(delta) = (1 - e^{i delta}) / (-i delta), with w(0) = 1.
Complex phase_weight(double delta);

PerturbationData perturbation_data(const EigenSystem& eig, const HermitianMatrix& kprime);

/// L = sum_{m,n} w(lambda_n - lambda_m) |m><m|K'|n><n|, reported in the original basis.
LocalGenerator local_generator(const EigenSystem& eig, const HermitianMatrix& kprime);

/// F_M = (ell_max - ell_min)^2, f_M = F_M / N^2.
FisherMax max_fisher(const LocalGenerator& lg, int n_atoms);

/// (1/sqrt2) e^{+iK} (|ell_max> + e^{i rel_phase} |ell_min>).
OptimalState optimal_input_state(const EigenSystem& eig_k, const LocalGenerator& lg,
                                  double rel_phase = 0.0);

/// |psi'> = (d/dtheta e^{-iK}) |psi0> assembled from first-order perturbation theory.
ComplexVector derivative_state_pt(const EigenSystem& eig, const HermitianMatrix& kprime,
                                  const StateVector& psi0);

/// F = 4 [<psi'|psi'> - |<psi|psi'>|^2]; roundoff negatives above -1e-12 clip to 0.
double fisher_for_state(const StateVector& psi, const ComplexVector& psi_prime);

/// F = 4 [<psi|L^2|psi> - <psi|L|psi>^2] for the evolved state psi.
double fisher_via_local_generator(const StateVector& psi, const LocalGenerator& lg);

/// Every intermediate of one parameter point, for callers that need more than QfiPoint.
struct PointAnalysis {
  HamiltonianParams params;
  HermitianMatrix hamiltonian;
  HermitianMatrix kprime;
  EigenSystem eig;
  LocalGenerator generator;
  QfiPoint point;
};

/// Decomposes K (with degeneracy resolution against K', or jitter) ready for the
/// perturbative formulas.
EigenSystem decompose(const HermitianMatrix& k, const HermitianMatrix& kprime,
                      const QfiOptions& options = {});

PointAnalysis analyze_point(const HamiltonianParams& params, const QfiOptions& options = {});

/// Full pipeline: Hamiltonian -> eigensystem -> L -> F_M and the optimal input state.
QfiPoint evaluate_point(const HamiltonianParams& params, const QfiOptions& options = {});

}  // namespace qfimeter
