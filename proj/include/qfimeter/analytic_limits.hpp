#pragma once

#include "qfimeter/qfi_core.hpp"

namespace qfimeter {

/// Rewrites -tau J_x + eps J_z as T (sin(phi) J_x + cos(phi) J_z).
struct TiltedFrame {
  double big_t;
  double cos_phi;
  double sin_phi;
};

/// Throws InvalidParams when tau = eps = 0 (no tilt axis).
TiltedFrame tilted_frame(double tau, double eps);

/// Large-T limit of the u = 0 model: N^2 cos^2(phi) = N^2 eps^2 / (tau^2 + eps^2).
double fisher_limit_no_interaction(const HamiltonianParams& params);

/// |u| -> infinity: L = J_z, so F_M = N^2.
double fisher_limit_strong_interaction(int n_atoms);

/// Large-scaling limit of L: K' with only its diagonal in the K eigenbasis kept,
/// returned in the |J,m> basis.
HermitianMatrix local_generator_large_scaling(const EigenSystem& eig,
                                              const HermitianMatrix& kprime);

/// max over the relative phase of |<NOON|ground>|^2, NOON = (|N,0> + e^{i phi}|0,N>)/sqrt2.
/// A (numerically) degenerate ground manifold is treated as a whole: the overlap is the
/// largest one over normalized states in its span. Requires eps ~ 0 and u < 0.
double noon_ground_state_overlap(const HamiltonianParams& params);

/// Leading-order eps -> 0 point: K built with eps = 0, then the usual pipeline.
QfiPoint fisher_eps_zero(const HamiltonianParams& params, const QfiOptions& options = {});

}  // namespace qfimeter
