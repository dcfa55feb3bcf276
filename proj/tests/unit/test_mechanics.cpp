#include <doctest.h>

#include <cmath>

#include "morpho/mechanics.hpp"

using namespace morpho;

TEST_CASE("cauchy stress") {
  ParameterSet p;
  CHECK(cauchy_stress(0.0, 0.0, 0.1, p) == 0.0);
  CHECK(cauchy_stress(0.01, 0.05, 0.1125, p) == doctest::Approx(1.0 + 350.0 * std::sqrt(0.1125) * 0.05).epsilon(1e-14));
  CHECK(cauchy_stress(0.01, 0.05, 0.1125, p) == doctest::Approx(6.8697).epsilon(1e-4));
  CHECK(cauchy_stress(0.0, 1.0, 1.0, p) == p.E);
  CHECK(cauchy_stress(0.0, 1.0, -1e-9, p) == 0.0);
}

TEST_CASE("traction potential") {
  ParameterSet p;
  CHECK(traction_potential(0.0, 0.1, p) == 0.0);
  CHECK(traction_potential(1e3, 0.1125, p) == doctest::Approx(4.9368).epsilon(1e-4));
  CHECK(traction_potential(1e3, 1e12, p) < 1e-6);
  CHECK(traction_weight(0.1125, p) * 1e3 == doctest::Approx(traction_potential(1e3, 0.1125, p)).epsilon(1e-14));
  // Maximized over rho at rho = R.
  const double peak = traction_potential(1e3, p.R, p);
  for (double rho = 0.05; rho < 5.0; rho += 0.05) CHECK(traction_potential(1e3, rho, p) <= peak + 1e-12);
}

TEST_CASE("morphoelastic rate") {
  ParameterSet p;
  CHECK(morpho_rate(1e4, 0.0, 0.0, p) == 0.0);
  CHECK(morpho_rate(0.0, 0.0, 1e-8, p) == 0.0);
  CHECK(morpho_rate(1e4, 0.0, 1e-8, p) == doctest::Approx(400.0 * 1e-4 / 3.0).epsilon(1e-14));
  CHECK(morpho_rate(1e4, 0.0, 1e-8, p) == doctest::Approx(1.3333e-2).epsilon(1e-4));
  CHECK(morpho_rate(2e3, 1e3, 5e-9, p) >= 0.0);
}
