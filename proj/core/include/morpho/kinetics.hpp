#pragma once

#include <cstddef>

#include "morpho/parameters.hpp"

namespace morpho {

/// Pointwise constituent values and their spatial gradients.
struct LocalState {
  double N = 0.0, M = 0.0, c = 0.0, rho = 0.0;
  double grad_N = 0.0, grad_M = 0.0, grad_c = 0.0;
};

struct Reactions {
  double N = 0.0, M = 0.0, c = 0.0, rho = 0.0;
};

struct Fluxes {
  double N = 0.0, M = 0.0, c = 0.0, rho = 0.0;
};

/// Copy with negative N, M, c, rho raised to zero; increments `clip_count`
/// once per clipped value when non-null.
LocalState clipped(const LocalState& ls, std::size_t* clip_count = nullptr);

/// Instantaneous MMP level g = (N + eta_II M) rho / (1 + a_c_III c).
double mmp_level(double N, double M, double c, double rho, const ParameterSet& p);

/// Cell, signaling-molecule and collagen production minus removal.
/// Negative inputs are clipped to zero before evaluation.
Reactions reactions(const LocalState& ls, const ParameterSet& p, const DerivedParameters& d,
                    std::size_t* clip_count = nullptr);

/// Random-walk diffusion plus chemotaxis for the cells, Fickian diffusion
/// for the signaling molecules, no transport of collagen.
Fluxes fluxes(const LocalState& ls, const ParameterSet& p);

/// Reactions split into explicit production and terms linear in the new
/// unknowns, as used by the fixed-point linearization:
///
///   R_N   = N_gain - N_loss_rate * N
///   R_M   = M_gain + M_from_N_rate * N - M_loss_rate * M
///   R_c   = c_gain - c_loss_rate * c
///   R_rho = rho_from_cells_rate * (N + eta_I M) - rho_loss_rate * rho
///
/// Evaluating the right-hand sides at the same state reproduces `reactions`.
struct ReactionSplit {
  double N_gain = 0.0, N_loss_rate = 0.0;
  double M_gain = 0.0, M_from_N_rate = 0.0, M_loss_rate = 0.0;
  double c_gain = 0.0, c_loss_rate = 0.0;
  double rho_from_cells_rate = 0.0, rho_loss_rate = 0.0;
};
ReactionSplit split_reactions(const LocalState& ls, const ParameterSet& p, const DerivedParameters& d,
                              std::size_t* clip_count = nullptr);

}  // namespace morpho
