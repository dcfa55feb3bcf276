#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "morpho/errors.hpp"
#include "morpho/sensitivity.hpp"

using namespace morpho;

namespace {

SensitivityConfig quick() {
  SensitivityConfig cfg;
  cfg.numerics.n_elements = 40;
  cfg.numerics.dt = 0.5;
  cfg.variations = {-0.1, 0.0, 0.1};
  return cfg;
}

ParameterSet short_baseline() {
  ParameterSet p;
  p.T_end = 20.0;
  return p;
}

}  // namespace

TEST_CASE("default quantities and variations") {
  const auto q = default_quantities();
  CHECK(q.size() == 31);
  CHECK(std::set<std::string>(q.begin(), q.end()).size() == 31);
  for (const auto& k : q) CHECK(find_parameter_field(k) != nullptr);
  CHECK(std::find(q.begin(), q.end(), "L_w") != q.end());
  const auto v = default_variations();
  CHECK(v.size() == 11);
  CHECK(v.front() == -0.25);
  CHECK(v.back() == 0.25);
  CHECK(std::count(v.begin(), v.end(), 0.0) == 1);
  CHECK(q.size() * (v.size() - 1) + 1 == 311);
}

TEST_CASE("z-scores") {
  const std::vector<double> flat(11, 3.0);
  for (double z : z_scores(flat)) CHECK(z == 0.0);

  std::vector<double> lin;
  for (int k = -25; k <= 25; k += 5) lin.push_back(k);
  const auto z = z_scores(lin);
  // Sample sd of {-25, ..., 25} in steps of 5 is sqrt(275) = 16.583.
  double abs_sum = 0.0, sum = 0.0;
  for (double v : z) {
    abs_sum += std::abs(v);
    sum += v;
  }
  CHECK(abs_sum == doctest::Approx(150.0 / std::sqrt(275.0)).epsilon(1e-12));
  CHECK(abs_sum == doctest::Approx(9.045).epsilon(1e-4));
  CHECK(std::abs(sum) < 1e-12);
  double ss = 0.0;
  for (double v : z) ss += v * v;
  CHECK(ss / 10.0 == doctest::Approx(1.0).epsilon(1e-12));

  // Affine invariance.
  std::vector<double> scaled;
  for (double x : lin) scaled.push_back(3.5 * x + 100.0);
  const auto zs = z_scores(scaled);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(zs[i] == doctest::Approx(z[i]).epsilon(1e-12));

  // Spread below 1e-12 of the mean is treated as no sensitivity.
  std::vector<double> tiny(11, 1e6);
  tiny[3] += 1e-8;
  for (double v : z_scores(tiny)) CHECK(v == 0.0);

  CHECK_THROWS_AS(z_scores(std::vector<double>{1.0}), std::invalid_argument);
  CHECK_THROWS_AS(z_scores(std::vector<double>{1.0, std::nan("")}), std::invalid_argument);
}

TEST_CASE("aggregate") {
  std::array<std::vector<double>, kMetricCount> zero;
  for (auto& v : zero) v.assign(11, 0.0);
  CHECK(aggregate(zero).total == 0.0);

  std::array<std::vector<double>, kMetricCount> z;
  for (std::size_t r = 0; r < kMetricCount; ++r) z[r] = {-1.0 * (r + 1), 0.5, std::nan("")};
  const auto s = aggregate(z);
  double sum = 0.0;
  for (std::size_t r = 0; r < kMetricCount; ++r) {
    CHECK(s.per_metric[r] == doctest::Approx(r + 1.5));
    sum += s.per_metric[r];
  }
  CHECK(s.total == sum);
  CHECK(s.rounded_total == std::lround(sum));
}

TEST_CASE("sweep structure, sharing and determinism") {
  const auto p = short_baseline();
  auto cfg = quick();
  const std::vector<std::string> q = {"delta_N", "rho_bar", "rho_tilde"};
  const auto report = run_sensitivity(p, q, cfg);
  CHECK(report.simulations == 1 + 3 * 2);
  REQUIRE(report.rows.size() == 3);
  CHECK(report.invalid_cells() == 0);
  for (const auto& row : report.rows) {
    REQUIRE(row.runs.size() == 3);
    CHECK(*row.runs[1] == *report.rows[0].runs[1]);  // shared baseline
    CHECK(row.scores.total >= 0.0);
  }
  // Pooled scope: each metric is standardized over all 3 x 3 cells, the
  // shared baseline entering once per row.
  for (std::size_t r = 0; r < kMetricCount; ++r) {
    std::vector<double> v;
    for (const auto& row : report.rows)
      for (const auto& m : row.runs) v.push_back(metric(*m, r));
    REQUIRE(v.size() == 9);
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (v.size() - 1));
    std::size_t k = 0;
    for (const auto& row : report.rows)
      for (std::size_t j = 0; j < 3; ++j, ++k) {
        const double expected = sd > 1e-12 * std::abs(mean) ? (v[k] - mean) / sd : 0.0;
        CHECK(row.z[r][j] == doctest::Approx(expected).epsilon(1e-9).scale(1.0));
      }
  }
  const auto* rb = report.find("rho_bar");
  REQUIRE(rb != nullptr);
  CHECK(rb->values[0] == doctest::Approx(0.9 * 0.1125));
  CHECK(rb->values[2] == doctest::Approx(1.1 * 0.1125));
  CHECK(report.baseline.rho_tilde == 0.0225);

  // Reordering quantities and adding workers changes nothing.
  cfg.workers = 3;
  const auto shuffled = run_sensitivity(p, {"rho_tilde", "delta_N", "rho_bar"}, cfg);
  for (const auto& row : report.rows) {
    const auto* other = shuffled.find(row.quantity);
    REQUIRE(other != nullptr);
    CHECK(other->scores.total == doctest::Approx(row.scores.total).epsilon(1e-12));
    for (std::size_t j = 0; j < row.runs.size(); ++j) CHECK(*other->runs[j] == *row.runs[j]);
  }
  const auto rank = report.ranking();
  CHECK(rank.size() == 3);
  for (std::size_t k = 1; k < rank.size(); ++k)
    CHECK(report.rows[rank[k - 1]].scores.total >= report.rows[rank[k]].scores.total);
}

TEST_CASE("per-quantity scope standardizes each row on its own") {
  auto cfg = quick();
  cfg.scope = ZScoreScope::per_quantity;
  const auto report = run_sensitivity(short_baseline(), {"delta_N", "rho_tilde"}, cfg);
  CHECK(report.scope == ZScoreScope::per_quantity);
  for (const auto& row : report.rows) {
    for (std::size_t r = 0; r < kMetricCount; ++r) {
      std::vector<double> v;
      for (const auto& m : row.runs) v.push_back(metric(*m, r));
      const auto z = z_scores(v);
      for (std::size_t j = 0; j < z.size(); ++j) CHECK(row.z[r][j] == z[j]);
    }
    CHECK(row.scores.total <= 5.0 * std::sqrt(3.0 * 2.0) + 1e-12);  // sum |z| <= sqrt(n (n - 1)) per metric
  }
}

TEST_CASE("failed cells are reported and excluded") {
  auto cfg = quick();
  cfg.variations = {-0.1, 0.0, 0.1, 2.0};  // s = 7.5 does not fit in the wound
  const auto report = run_sensitivity(short_baseline(), {"s"}, cfg);
  const auto& row = report.rows[0];
  CHECK(row.invalid == 1);
  CHECK_FALSE(row.runs[3].has_value());
  CHECK_FALSE(row.errors[3].empty());
  CHECK(std::isnan(row.z[0][3]));
  CHECK(std::isfinite(row.scores.total));
  CHECK(report.invalid_cells() == 1);
}

TEST_CASE("configuration errors") {
  auto cfg = quick();
  CHECK_THROWS_AS(run_sensitivity(short_baseline(), {"bogus"}, cfg), ConfigError);
  cfg.variations = {-0.1, 0.1};
  CHECK_THROWS_AS(run_sensitivity(short_baseline(), {"mu"}, cfg), ConfigError);
  ParameterSet bad = short_baseline();
  bad.k_c = 1.0;
  CHECK_THROWS_AS(run_sensitivity(bad, {"mu"}, quick()), ConfigError);
}
