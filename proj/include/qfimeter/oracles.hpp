#pragma once

#include <cstdint>

#include "qfimeter/qfi_core.hpp"

// Brute-force reference computations. They are slow and only used to check
// the perturbative code paths; none of them calls phase_weight() or the
// perturbation-theory formulas.
namespace qfimeter::oracles {

/// (e^{-iK(eps+d)} - e^{-iK(eps-d)}) psi0 / 2d, each exponential from a freshly
/// built Hamiltonian. dtheta must lie in [1e-8, 1e-2].
ComplexVector derivative_state_fd(const HamiltonianParams& params, const StateVector& psi0,
                                  double dtheta);

/// Forward difference (e^{-iK(eps+d)} - e^{-iK(eps)}) psi0 / d; first order in d.
ComplexVector derivative_state_forward(const HamiltonianParams& params, const StateVector& psi0,
                                       double dtheta);

/// Composite Simpson rule for int_0^1 U(x) K' U(x)^dagger dx with U(x) = e^{-ixK}.
/// `nodes` must be odd and >= 3.
HermitianMatrix quadrature_local_generator(const EigenSystem& eig, const HermitianMatrix& kprime,
                                           int nodes);

struct BoundsReport {
  bool pass;
  double lower_margin;  // ell_min - (-N/2)
  double upper_margin;  // N/2 - ell_max
};

inline constexpr double kBoundsSlack = 1e-8;

/// -N/2 - 1e-8 <= ell_min and ell_max <= N/2 + 1e-8.
BoundsReport spectrum_respects_generator_bounds(const LocalGenerator& lg, int n_atoms);

/// Complex-normal amplitudes, normalized.
StateVector random_state(Index dim, std::uint64_t seed);

/// Largest Fisher information over `n_samples` random states at this point.
double random_state_fisher_sample(const HamiltonianParams& params, int n_samples,
                                  std::uint64_t seed);

/// Same, with an explicit list of candidate states (used to plant known states).
double max_fisher_over_states(const LocalGenerator& lg, const std::vector<StateVector>& states);

}  // namespace qfimeter::oracles
