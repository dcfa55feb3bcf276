#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "morpho/discretization.hpp"
#include "morpho/initial_conditions.hpp"
#include "morpho/parameters.hpp"
#include "morpho/state.hpp"

namespace morpho {

struct NumericsConfig {
  double dt = 0.1;             // day
  double picard_tol = 1e-8;    // max relative nodal update
  int picard_max = 25;
  double dt_min = 1e-3;        // day
  double output_stride = 1.0;  // days between recorded samples
  std::size_t n_elements = 200;
  // Negative N, M, c, rho smaller than this fraction of the field scale are
  // zeroed after a step; larger undershoot rejects the step.
  double negative_tolerance = 1e-4;

  bool valid() const;
};

struct StepDiagnostics {
  std::size_t accepted_steps = 0;
  std::size_t picard_iterations = 0;
  int max_picard = 0;
  std::size_t rejections = 0;
  std::size_t clipped_values = 0;
  std::size_t zeroed_negatives = 0;
  double min_dt = 0.0;
};

/// Per-element parameters and the derived closures for one simulation.
struct Material {
  std::vector<ParameterSet> elements;
  DerivedParameters derived;
  BoundaryValues boundary;
  ParameterSet mean;  // length-weighted spatial mean
};

Material make_material(const SpatialParameters& params, const MovingMesh& mesh);
Material make_material(const ParameterSet& p, const MovingMesh& mesh);

/// One backward-Euler step of size `dt` with fixed-point (Picard) iterations.
/// Returns false, leaving `state` untouched, when the iteration does not
/// converge, an element inverts or the undershoot exceeds the tolerance.
/// Throws NumericalError on NaN/Inf or eps >= 1.
bool try_step(SimulationState& state, const Material& material, double dt, const NumericsConfig& cfg,
              StepDiagnostics& diag);

/// Advances by cfg.dt, halving on rejection down to cfg.dt_min.
/// Throws NumericalError when dt_min is reached.
void step(SimulationState& state, const Material& material, const NumericsConfig& cfg, StepDiagnostics& diag);

struct Timeline {
  std::vector<double> t;    // day
  std::vector<double> rsa;  // relative surface area
  std::vector<double> sed;  // total strain energy density
  StepDiagnostics diagnostics;
};

using StateObserver = std::function<void(const SimulationState&)>;

/// Integrates from t = 0 to p.T_end, sampling RSA and SED every output stride.
Timeline simulate(const Material& material, SimulationState initial, const NumericsConfig& cfg,
                  const StateObserver& observer = {});
Timeline simulate(const SpatialParameters& params, const DomainSpec& spec, const NumericsConfig& cfg,
                  const StateObserver& observer = {});
Timeline simulate(const ParameterSet& p, const DomainSpec& spec, const NumericsConfig& cfg,
                  const StateObserver& observer = {});
/// Uses the geometry of `p` on the half domain.
Timeline simulate(const ParameterSet& p, const NumericsConfig& cfg);

}  // namespace morpho
