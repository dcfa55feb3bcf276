#include "morpho/mechanics.hpp"

#include <algorithm>
#include <cmath>

namespace morpho {

double cauchy_stress(double dv_dx, double eps, double rho, const ParameterSet& p) {
  return p.mu * dv_dx + p.E * std::sqrt(std::max(rho, 0.0)) * eps;
}

double traction_weight(double rho, const ParameterSet& p) {
  rho = std::max(rho, 0.0);
  return p.xi * rho / (p.R * p.R + rho * rho);
}

double traction_potential(double M, double rho, const ParameterSet& p) { return traction_weight(rho, p) * M; }

double morpho_rate(double N, double M, double c, const ParameterSet& p) {
  return p.zeta * (N + p.eta_II * M) * c / (1.0 + p.a_c_III * c);
}

}  // namespace morpho
