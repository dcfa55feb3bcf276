#include "morpho/state.hpp"

#include <stdexcept>

namespace morpho {

std::string_view field_name(Field f) {
  switch (f) {
    case Field::N: return "N";
    case Field::M: return "M";
    case Field::c: return "c";
    case Field::rho: return "rho";
    case Field::v: return "v";
    case Field::eps: return "eps";
  }
  return "?";
}

std::vector<double> MovingMesh::element_lengths() const {
  std::vector<double> h(elements());
  for (std::size_t e = 0; e < h.size(); ++e) h[e] = length(e);
  return h;
}

std::vector<double> MovingMesh::initial_midpoints() const {
  std::vector<double> m(elements());
  for (std::size_t e = 0; e < m.size(); ++e) m[e] = 0.5 * (x0[e] + x0[e + 1]);
  return m;
}

bool MovingMesh::valid() const {
  if (x.size() < 2 || x0.size() != x.size()) return false;
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i + 1] > x[i])) return false;
  return true;
}

std::vector<double>& SimulationState::field(Field f) {
  switch (f) {
    case Field::N: return N;
    case Field::M: return M;
    case Field::c: return c;
    case Field::rho: return rho;
    case Field::v: return v;
    case Field::eps: return eps;
  }
  throw std::logic_error("bad field");
}

const std::vector<double>& SimulationState::field(Field f) const {
  return const_cast<SimulationState*>(this)->field(f);
}

bool SimulationState::consistent() const {
  const auto n = mesh.nodes();
  for (auto f : kAllFields)
    if (field(f).size() != n) return false;
  return u.size() == n;
}

}  // namespace morpho
