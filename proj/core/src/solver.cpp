#include "morpho/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "morpho/errors.hpp"
#include "morpho/observables.hpp"

namespace morpho {

namespace {

std::array<double, kFieldCount> field_scales(const Material& m) {
  const ParameterSet& p = m.mean;
  const double n = std::max(p.N_bar, 1.0);
  const double c = std::max({p.c_tilde, p.a_c_II, 1e-30});
  const double rho = std::max(p.rho_bar, 1e-30);
  return {n, n, c, rho, 1e-2, 1e-2};
}

// Floors keep the relative update meaningful for fields that are (nearly) zero.
std::array<double, kFieldCount> update_floors(const Material& m) {
  auto s = field_scales(m);
  s[static_cast<std::size_t>(Field::v)] = 1e-4;
  s[static_cast<std::size_t>(Field::eps)] = 1e-4;
  return s;
}

bool all_finite(const SimulationState& s) {
  for (auto f : kAllFields)
    for (double x : s.field(f))
      if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

bool NumericsConfig::valid() const {
  return dt > 0.0 && dt_min > 0.0 && dt_min <= dt && picard_tol > 0.0 && picard_max >= 1 && output_stride > 0.0 &&
         n_elements >= 8 && negative_tolerance >= 0.0;
}

Material make_material(const SpatialParameters& params, const MovingMesh& mesh) {
  Material m;
  m.elements = params.per_element(mesh.elements());
  const auto h = mesh.element_lengths();
  m.mean = params.spatial_mean(h);
  m.derived = derive(m.mean);
  m.boundary = boundary_values(m.mean);
  return m;
}

Material make_material(const ParameterSet& p, const MovingMesh& mesh) { return make_material(SpatialParameters(p), mesh); }

bool try_step(SimulationState& state, const Material& material, double dt, const NumericsConfig& cfg,
              StepDiagnostics& diag) {
  const auto scales = field_scales(material);
  const auto floors = update_floors(material);
  SimulationState lagged = state;
  bool converged = false;
  for (int k = 1; k <= cfg.picard_max; ++k) {
    AssemblyDiagnostics ad;
    LinearSystem sys;
    try {
      sys = assemble(state, lagged, material.elements, material.derived, dt, &ad);
    } catch (const NumericalError&) {
      return false;  // lagged geometry inverted
    }
    apply_bcs(sys, state.mesh, material.boundary);
    const auto x = solve(std::move(sys), scales);
    if (!std::all_of(x.begin(), x.end(), [](double value) { return std::isfinite(value); }))
      throw NumericalError("non-finite value in the fixed-point iteration");

    double update = 0.0;
    for (auto f : kAllFields) {
      auto& z = lagged.field(f);
      double diff = 0.0, mag = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        const double value = x[dof(i, f)];
        diff = std::max(diff, std::abs(value - z[i]));
        mag = std::max(mag, std::abs(value));
        z[i] = value;
      }
      update = std::max(update, diff / std::max(mag, floors[static_cast<std::size_t>(f)]));
    }
    if (!std::isfinite(update)) throw NumericalError("non-finite value in the fixed-point iteration");
    diag.picard_iterations += 1;
    diag.clipped_values += ad.clipped_values;
    if (update < cfg.picard_tol) {
      diag.max_picard = std::max(diag.max_picard, k);
      converged = true;
      break;
    }
  }
  if (!converged) return false;

  auto moved = move_mesh(state.mesh, lagged.v, dt);
  if (!moved) return false;
  lagged.mesh = std::move(*moved);

  if (!all_finite(lagged)) throw NumericalError("non-finite field value after step");
  std::size_t zeroed = 0;
  for (auto f : {Field::N, Field::M, Field::c, Field::rho}) {
    const double limit = cfg.negative_tolerance * scales[static_cast<std::size_t>(f)];
    for (double& z : lagged.field(f)) {
      if (z < 0.0) {
        if (-z > limit) return false;
        z = 0.0;
        ++zeroed;
      }
    }
  }
  for (double e : lagged.eps) {
    if (e >= 1.0) {
      std::ostringstream os;
      os << "effective strain reached " << e << " (must stay below 1) at t = " << state.t + dt;
      throw NumericalError(os.str());
    }
  }
  for (std::size_t i = 0; i < lagged.u.size(); ++i) lagged.u[i] = state.u[i] + dt * lagged.v[i];
  lagged.t = state.t + dt;
  diag.zeroed_negatives += zeroed;
  diag.accepted_steps += 1;
  diag.min_dt = diag.min_dt == 0.0 ? dt : std::min(diag.min_dt, dt);
  state = std::move(lagged);
  return true;
}

void step(SimulationState& state, const Material& material, const NumericsConfig& cfg, StepDiagnostics& diag) {
  double dt = cfg.dt;
  while (!try_step(state, material, dt, cfg, diag)) {
    ++diag.rejections;
    if (dt <= cfg.dt_min) {
      std::ostringstream os;
      os << "step rejected at the minimum time step " << cfg.dt_min << " (t = " << state.t << ")";
      throw NumericalError(os.str());
    }
    dt = std::max(0.5 * dt, cfg.dt_min);
  }
}

Timeline simulate(const Material& material, SimulationState state, const NumericsConfig& cfg,
                  const StateObserver& observer) {
  if (!cfg.valid()) throw ConfigError("invalid numerics configuration");
  const double t_end = material.mean.T_end;
  Timeline tl;
  auto record = [&] {
    tl.t.push_back(state.t);
    tl.rsa.push_back(relative_surface_area(state.mesh));
    tl.sed.push_back(strain_energy(state, material.elements));
    if (observer) observer(state);
  };
  record();

  const auto n_samples = static_cast<std::size_t>(std::floor(t_end / cfg.output_stride + 1e-9));
  double dt = cfg.dt;
  for (std::size_t k = 1; k <= n_samples; ++k) {
    const double target = static_cast<double>(k) * cfg.output_stride;
    while (state.t < target - 1e-9 * cfg.output_stride) {
      double h = std::min(dt, target - state.t);
      bool accepted = try_step(state, material, h, cfg, tl.diagnostics);
      while (!accepted) {
        ++tl.diagnostics.rejections;
        if (h <= cfg.dt_min) {
          std::ostringstream os;
          os << "step rejected at the minimum time step " << cfg.dt_min << " (t = " << state.t << ")";
          throw NumericalError(os.str());
        }
        h = std::max(0.5 * h, cfg.dt_min);
        dt = h;
        accepted = try_step(state, material, h, cfg, tl.diagnostics);
      }
      dt = std::min(cfg.dt, 2.0 * dt);
    }
    state.t = target;
    record();
  }
  return tl;
}

Timeline simulate(const SpatialParameters& params, const DomainSpec& spec, const NumericsConfig& cfg,
                  const StateObserver& observer) {
  if (!cfg.valid()) throw ConfigError("invalid numerics configuration");
  const auto mesh = build_mesh(spec, cfg.n_elements);
  const Material material = make_material(params, mesh);
  return simulate(material, build_initial_state(material.mean, spec, mesh), cfg, observer);
}

Timeline simulate(const ParameterSet& p, const DomainSpec& spec, const NumericsConfig& cfg,
                  const StateObserver& observer) {
  return simulate(SpatialParameters(p), spec, cfg, observer);
}

Timeline simulate(const ParameterSet& p, const NumericsConfig& cfg) { return simulate(p, domain_from(p), cfg); }

}  // namespace morpho
