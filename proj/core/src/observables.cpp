#include "morpho/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "morpho/solver.hpp"

namespace morpho {

double relative_surface_area(const MovingMesh& mesh) {
  if (mesh.half_domain) return std::abs(mesh.x[mesh.edge_left]) / std::abs(mesh.x0[mesh.edge_left]);
  return (mesh.x[mesh.edge_right] - mesh.x[mesh.edge_left]) / (mesh.x0[mesh.edge_right] - mesh.x0[mesh.edge_left]);
}

double strain_energy(const SimulationState& state, std::span<const ParameterSet> element_params) {
  const auto& mesh = state.mesh;
  if (element_params.size() != mesh.elements() && element_params.size() != 1)
    throw std::invalid_argument("strain_energy: parameter count does not match the mesh");
  double total = 0.0;
  for (std::size_t e = 0; e < mesh.elements(); ++e) {
    const ParameterSet& p = element_params[element_params.size() == 1 ? 0 : e];
    const double rho = std::max(0.0, 0.5 * (state.rho[e] + state.rho[e + 1]));
    const double eps = 0.5 * (state.eps[e] + state.eps[e + 1]);
    total += p.E * std::sqrt(rho) * eps * eps * mesh.length(e);
  }
  return mesh.half_domain ? total : 0.5 * total;
}

double strain_energy(const SimulationState& state, const ParameterSet& p) {
  return strain_energy(state, std::span<const ParameterSet>(&p, 1));
}

double metric(const SummaryMetrics& m, std::size_t index) {
  switch (index) {
    case 0: return m.rsa_min;
    case 1: return m.rsa_day;
    case 2: return m.rsa_365;
    case 3: return m.sed_max;
    case 4: return m.sed_day;
  }
  throw std::out_of_range("metric index");
}

SummaryMetrics summarize(const Timeline& tl) {
  if (tl.t.empty() || tl.rsa.size() != tl.t.size() || tl.sed.size() != tl.t.size())
    throw std::invalid_argument("summarize: empty or inconsistent timeline");
  if (!std::is_sorted(tl.t.begin(), tl.t.end()) ||
      std::adjacent_find(tl.t.begin(), tl.t.end()) != tl.t.end())
    throw std::invalid_argument("summarize: sample times must be strictly increasing");
  SummaryMetrics m;
  std::size_t imin = 0, imax = 0;
  for (std::size_t k = 1; k < tl.t.size(); ++k) {
    if (tl.rsa[k] < tl.rsa[imin]) imin = k;
    if (tl.sed[k] > tl.sed[imax]) imax = k;
  }
  m.rsa_min = tl.rsa[imin];
  m.rsa_day = tl.t[imin];
  m.rsa_365 = tl.rsa.back();
  m.sed_max = tl.sed[imax];
  m.sed_day = tl.t[imax];
  return m;
}

}  // namespace morpho
