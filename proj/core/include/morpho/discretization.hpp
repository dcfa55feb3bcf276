#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "morpho/banded.hpp"
#include "morpho/initial_conditions.hpp"
#include "morpho/parameters.hpp"
#include "morpho/state.hpp"

namespace morpho {

/// Graded mesh: uniform spacing over the wound [-L_w, 0] and a margin of
/// about s beyond the edge, geometric coarsening toward -L. The wound edge
/// -L_w is a node. On the full domain the half mesh is mirrored and
/// `n_elements` counts both halves.
MovingMesh build_mesh(const DomainSpec& spec, std::size_t n_elements);

using ElementMatrix = std::array<std::array<double, 2>, 2>;

/// Consistent mass matrix of a linear element of length h.
ElementMatrix element_mass(double h);
/// Stiffness matrix int phi_i' phi_j' of a linear element of length h.
ElementMatrix element_stiffness(double h);
/// int phi_i phi_j' over a linear element (independent of h).
ElementMatrix element_gradient();

inline constexpr std::size_t dof(std::size_t node, Field f) { return node * kFieldCount + static_cast<std::size_t>(f); }

struct LinearSystem {
  BandedMatrix A;
  std::vector<double> rhs;
};

struct AssemblyDiagnostics {
  std::size_t clipped_values = 0;
};

/// Backward-Euler system for all nodal unknowns at t + dt.
///
/// Every nonlinear coefficient is frozen at the element-midpoint average of
/// `lagged` (the previous fixed-point iterate). New-level integrals use the
/// geometry x^n + dt * v_lagged; old-level mass terms use `previous.mesh`.
/// The mesh moves with the tissue, so the transported basis has zero
/// material derivative and no mesh-velocity terms appear.
/// Throws NumericalError on an element of nonpositive length.
LinearSystem assemble(const SimulationState& previous, const SimulationState& lagged,
                      std::span<const ParameterSet> element_params, const DerivedParameters& d, double dt,
                      AssemblyDiagnostics* diag = nullptr);

/// Row replacement for N, M, c, v at x = -L (both ends on the full domain)
/// and v = 0 at the symmetry point x = 0 on the half domain.
void apply_bcs(LinearSystem& system, const MovingMesh& mesh, const BoundaryValues& bc);

/// Direct banded solve with column scaling by `field_scales` and row equilibration.
std::vector<double> solve(LinearSystem system, const std::array<double, kFieldCount>& field_scales);

/// Nodes advance by dt * v; nullopt if an element would invert.
std::optional<MovingMesh> move_mesh(const MovingMesh& mesh, std::span<const double> v_new, double dt);

/// Geometry x + dt * v without the inversion check.
std::vector<double> advected_coordinates(const MovingMesh& mesh, std::span<const double> v, double dt);

}  // namespace morpho
