#include "morpho/initial_conditions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace morpho {

DomainSpec domain_from(const ParameterSet& p, bool half_domain) { return {p.L, p.L_w, p.s, half_domain}; }

double initial_profile(double level_far, double level_wound, const DomainSpec& spec, double x) {
  const double tol = 1e-12 * spec.L;
  if (std::abs(x) > spec.L + tol) throw std::out_of_range("initial_profile: x = " + std::to_string(x) + " outside [-L, L]");
  // Even profile: evaluate the left edge at -|x|.
  const double y = -std::abs(x);
  if (y <= -spec.L_w) return level_far;
  if (y >= -spec.L_w + spec.s) return level_wound;
  const double mean = 0.5 * (level_far + level_wound);
  const double amplitude = 0.5 * (level_far - level_wound);
  return mean - amplitude * std::sin(std::numbers::pi / spec.s * (y + spec.L_w - 0.5 * spec.s));
}

SimulationState build_initial_state(const ParameterSet& p, const DomainSpec& spec, const MovingMesh& mesh) {
  SimulationState st;
  st.mesh = mesh;
  const auto n = mesh.nodes();
  st.N.resize(n);
  st.c.resize(n);
  st.rho.resize(n);
  st.M.assign(n, 0.0);
  st.v.assign(n, 0.0);
  st.eps.assign(n, 0.0);
  st.u.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = mesh.x[i];
    st.N[i] = initial_profile(p.N_bar, p.N_tilde, spec, x);
    st.c[i] = initial_profile(p.c_bar, p.c_tilde, spec, x);
    st.rho[i] = initial_profile(p.rho_bar, p.rho_tilde, spec, x);
  }
  return st;
}

BoundaryValues boundary_values(const ParameterSet& p) { return {p.N_bar, 0.0, 0.0, 0.0}; }

ParameterSet unwounded(ParameterSet p) {
  p.N_tilde = p.N_bar;
  p.c_tilde = p.c_bar;
  p.rho_tilde = p.rho_bar;
  return p;
}

}  // namespace morpho
