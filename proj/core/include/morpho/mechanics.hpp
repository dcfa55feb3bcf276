#pragma once

#include "morpho/parameters.hpp"

namespace morpho {

/// Visco-elastic Cauchy stress sigma = mu dv/dx + E sqrt(rho) eps.
double cauchy_stress(double dv_dx, double eps, double rho, const ParameterSet& p);

/// Myofibroblast traction potential psi = xi M rho / (R^2 + rho^2); the body
/// force is its spatial derivative.
double traction_potential(double M, double rho, const ParameterSet& p);

/// psi / M, the nodal weight multiplying the myofibroblast density.
double traction_weight(double rho, const ParameterSet& p);

/// Morphoelastic rate alpha = zeta (N + eta_II M) c / (1 + a_c_III c); the
/// strain sink is alpha * eps.
double morpho_rate(double N, double M, double c, const ParameterSet& p);

}  // namespace morpho
