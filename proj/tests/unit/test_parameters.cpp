#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "morpho/errors.hpp"
#include "morpho/kinetics.hpp"
#include "morpho/parameters.hpp"

using namespace morpho;

namespace {

// Bisection on a bracketing interval; independent of the closed forms.
double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// R_N at (N_bar, 0, 0, rho_bar) as a function of q.
double equilibrium_RN(const ParameterSet& p, double q) {
  return p.r_F * (1.0 - p.kappa_F * p.N_bar) * std::pow(p.N_bar, 1.0 + q) - p.delta_N * p.N_bar;
}

// R_rho at (N_bar, 0, 0, rho_bar) as a function of k_rho.
double equilibrium_Rrho(const ParameterSet& p, double k_rho) {
  return k_rho * p.N_bar - p.delta_rho * p.N_bar * p.rho_bar * p.rho_bar;
}

}  // namespace

TEST_CASE("derive_q matches the root of R_N at equilibrium") {
  ParameterSet p;
  p.delta_N = 0.02;
  p.r_F = 0.924;
  p.kappa_F = 1e-6;
  p.N_bar = 1e4;
  const double oracle = bisect([&](double q) { return equilibrium_RN(p, q); }, -1.0, 0.0);
  CHECK(derive_q(p) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(derive_q(p) == doctest::Approx(-0.41507).epsilon(1e-5));
}

TEST_CASE("derive_q vanishes when delta_N equals the effective division rate") {
  ParameterSet p;
  p.delta_N = p.r_F * (1.0 - p.kappa_F * p.N_bar);
  CHECK(std::abs(derive_q(p)) < 1e-15);
}

TEST_CASE("derive_q for the youngest class") {
  const auto p = age_profile(1);
  CHECK(p.delta_N == 1.9e-2);
  CHECK(p.r_F == 1.222);
  CHECK(p.N_bar == 1.5e4);
  const double oracle = bisect([&](double q) { return equilibrium_RN(p, q); }, -1.0, 0.0);
  CHECK(derive_q(p) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("derive_q domain errors") {
  ParameterSet p;
  p.kappa_F = 1.0 / p.N_bar;
  CHECK_THROWS_AS(derive_q(p), std::domain_error);
  p = ParameterSet{};
  p.N_bar = 1.0;
  CHECK_THROWS_AS(derive_q(p), std::domain_error);
}

TEST_CASE("derive_k_rho") {
  ParameterSet p;
  p.delta_rho = 6e-6;
  p.rho_bar = 0.1125;
  const double oracle = bisect([&](double k) { return equilibrium_Rrho(p, k); }, 0.0, 1e-6);
  CHECK(derive_k_rho(p) == doctest::Approx(7.59375e-8).epsilon(1e-14));
  CHECK(derive_k_rho(p) == doctest::Approx(oracle).epsilon(1e-12));
  p.delta_rho = 1.0;
  p.rho_bar = 1.0;
  CHECK(derive_k_rho(p) == 1.0);
  const auto p4 = age_profile(4);
  CHECK(derive_k_rho(p4) == doctest::Approx(5.495e-8).epsilon(1e-3));
}

TEST_CASE("equilibrium residuals vanish for every age class") {
  for (int id = 1; id <= 4; ++id) {
    CAPTURE(id);
    const auto p = age_profile(id);
    const auto d = derive(p);
    LocalState eq;
    eq.N = p.N_bar;
    eq.rho = p.rho_bar;
    const auto r = reactions(eq, p, d);
    CHECK(std::abs(r.N) < 1e-12 * p.delta_N * p.N_bar);
    CHECK(r.M == 0.0);
    CHECK(r.c == 0.0);
    CHECK(std::abs(r.rho) < 1e-12 * p.delta_rho * p.rho_bar * p.rho_bar * p.N_bar);
  }
}

TEST_CASE("validate the baseline") {
  const ParameterSet p;
  const auto report = validate(p);
  CHECK(report.all_passed());
  const auto* kc = report.find("k_c_stability");
  REQUIRE(kc != nullptr);
  CHECK(kc->lhs == 3e-13);
  CHECK(kc->rhs == doctest::Approx(5.625e-13).epsilon(1e-12));
  const auto* mu = report.find("mu_stability");
  REQUIRE(mu != nullptr);
  CHECK(mu->lhs == 100.0);
  CHECK(mu->rhs == doctest::Approx(std::sqrt(1.09 * 350.0 * std::sqrt(0.1125)) / std::numbers::pi).epsilon(1e-12));
  CHECK(mu->rhs == doctest::Approx(3.60).epsilon(2e-3));
}

TEST_CASE("validate flags violations without throwing") {
  ParameterSet p;
  p.k_c = 1.0;
  auto report = validate(p);
  CHECK_FALSE(report.all_passed());
  CHECK_FALSE(report.find("k_c_stability")->passed);
  CHECK(report.find("mu_stability")->passed);

  p = ParameterSet{};
  p.N_tilde = 2.0 * p.N_bar;
  p.s = p.L_w + 1.0;
  p.D_F = -1.0;
  report = validate(p);
  CHECK_FALSE(report.find("N_tilde_range")->passed);
  CHECK_FALSE(report.find("ramp_inside_wound")->passed);
  CHECK_FALSE(report.find("positive_constants")->passed);
}

TEST_CASE("age profiles") {
  const auto p2 = age_profile(2);
  CHECK(p2 == ParameterTable::bundled().baseline());
  CHECK(p2.N_bar == 1e4);
  CHECK(p2.rho_bar == 0.1125);
  CHECK(p2.D_F == 1e-6);
  CHECK(p2.E == 3.5e2);

  const auto p1 = age_profile(1);
  CHECK(p1.N_bar == 1.5e4);
  CHECK(p1.r_F == 1.222);
  CHECK(p1.mu == 1e2);

  const auto p4 = age_profile(4);
  CHECK(p4.rho_bar == 9.75e-2);
  CHECK(p4.zeta == 4.4e2);
  CHECK(p4.E == 4.1e2);

  CHECK(age_profile(3) == age_profile(3));
  CHECK_THROWS_AS(age_profile(0), std::invalid_argument);
  CHECK_THROWS_AS(age_profile(5), std::invalid_argument);
  for (int id = 1; id <= 4; ++id) CHECK(validate(age_profile(id)).all_passed());
}

TEST_CASE("bundled tables carry heterogeneity SDs") {
  const auto& t = ParameterTable::bundled();
  CHECK(t.schema_version() == 1);
  const auto& prof = t.profile(2);
  CHECK(prof.heterogeneity_sd.at("E") == 10.3);
  CHECK(prof.heterogeneity_sd.at("delta_c") == 9.8e-6);
  for (const auto& [key, sd] : prof.heterogeneity_sd) {
    CAPTURE(key);
    CHECK(find_parameter_field(key) != nullptr);
    CHECK(sd >= 0.0);
  }
  CHECK(prof.heterogeneity_sd.count("N_bar") == 0);
  CHECK(prof.heterogeneity_sd.count("rho_bar") == 0);
}

TEST_CASE("parameter access by key") {
  ParameterSet p;
  CHECK(parameter_fields().size() == 36);
  CHECK(get_parameter(p, "a_c_III") == 2e8);
  set_parameter(p, "eta_II", 0.5);
  CHECK(p.eta_II == 0.5);
  CHECK(find_parameter_field("nope") == nullptr);
  CHECK_THROWS_AS(get_parameter(p, "nope"), ConfigError);
}

TEST_CASE("key-value parsing") {
  const auto kv = parse_key_values("# comment\nD_F = 2e-6  # trailing\n\n  mu=120\n");
  CHECK(kv.size() == 2);
  CHECK(kv.at("D_F") == "2e-6");
  CHECK(kv.at("mu") == "120");

  const auto js = parse_key_values(R"({"E": 400, "zeta": 380.5})");
  CHECK(js.size() == 2);
  CHECK(parse_double(js.at("E")) == 400.0);

  ParameterSet p;
  apply_overrides(p, kv);
  CHECK(p.D_F == 2e-6);
  CHECK(p.mu == 120.0);

  std::map<std::string, std::string, std::less<>> leftovers;
  apply_overrides(p, {{"dt", "0.5"}, {"E", "300"}}, &leftovers);
  CHECK(p.E == 300.0);
  CHECK(leftovers.size() == 1);
  CHECK_THROWS_AS(apply_overrides(p, {{"dt", "0.5"}}), ConfigError);
  CHECK_THROWS_AS(parse_double("1.5x"), ConfigError);
  CHECK_THROWS_AS(read_key_values("/nonexistent/params.txt"), IoError);
}

TEST_CASE("spatial parameters") {
  SpatialParameters sp{ParameterSet{}};
  CHECK(sp.is_uniform());
  sp.set_field("E", {300.0, 400.0});
  CHECK_FALSE(sp.is_uniform());
  const auto per = sp.per_element(2);
  CHECK(per[0].E == 300.0);
  CHECK(per[1].E == 400.0);
  CHECK(per[1].mu == 100.0);
  const std::vector<double> h = {1.0, 3.0};
  CHECK(sp.spatial_mean(h).E == doctest::Approx(375.0));
  CHECK_THROWS(sp.per_element(3));
}
