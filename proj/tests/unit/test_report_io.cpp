#include <doctest.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "morpho/errors.hpp"
#include "morpho/report_io.hpp"

using namespace morpho;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, 0.7552895881396471}) {
    const auto s = format_number(x);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == x);
    CHECK(s.find(',') == std::string::npos);
  }
  CHECK(format_number(std::nan("")).empty());
}

TEST_CASE("timeline and metrics serialization") {
  Timeline tl;
  tl.t = {0.0, 1.0, 2.0};
  tl.rsa = {1.0, 0.9, 0.95};
  tl.sed = {0.0, 5.5, 2.0};
  tl.diagnostics.accepted_steps = 20;
  const auto csv = timeline_csv(tl);
  CHECK(csv.rfind("t,rsa,sed\n", 0) == 0);
  CHECK(lines(csv) == 4);
  CHECK(csv.find("1,0.9,5.5\n") != std::string::npos);

  const auto diag = nlohmann::json::parse(timeline_diagnostics_json(tl));
  CHECK(diag["diagnostics"]["accepted_steps"] == 20);

  const auto m = summarize(tl);
  const auto mj = nlohmann::json::parse(metrics_json(m));
  CHECK(mj["RSA_min"] == 0.9);
  CHECK(mj["RSA_day"] == 1.0);
  CHECK(metrics_csv_header() == "RSA_min,RSA_day,RSA_365,SED_max,SED_day\n");
  CHECK(metrics_csv_row(m) == "0.9,1,0.95,5.5,1\n");
}

TEST_CASE("sensitivity table layout") {
  SensitivityReport r;
  r.variations = {-0.1, 0.0, 0.1};
  for (const char* q : {"mu", "E"}) {
    SensitivityRow row;
    row.quantity = q;
    row.values = {1, 2, 3};
    row.runs = {SummaryMetrics{}, SummaryMetrics{}, std::nullopt};
    row.errors = {"", "", "boom"};
    for (auto& z : row.z) z = {0.5, -0.5, std::nan("")};
    row.scores = aggregate(row.z);
    row.invalid = 1;
    r.rows.push_back(row);
  }
  const auto csv = sensitivity_csv(r);
  CHECK(csv.rfind("parameter,S_RSA_min,S_RSA_day,S_RSA_365,S_SED_max,S_SED_day,S_total\n", 0) == 0);
  CHECK(lines(csv) == 3);
  CHECK(csv.find("mu,1,1,1,1,1,5\n") != std::string::npos);
  const auto js = nlohmann::json::parse(sensitivity_json(r));
  CHECK(js["rows"].size() == 2);
  CHECK(js["rows"][0]["runs"][2]["error"] == "boom");
  CHECK(js["rows"][0]["z_scores"]["RSA_min"][2].is_null());
  CHECK(js["rows"][0]["scores"]["S_total_rounded"] == 5);
  CHECK(js["invalid_cells"] == 2);
}

TEST_CASE("error document") {
  const auto j = nlohmann::json::parse(error_json("config", 2, "unknown parameter 'x'"));
  CHECK(j["error"]["category"] == "config");
  CHECK(j["error"]["exit_code"] == 2);
  CHECK(j["error"]["message"] == "unknown parameter 'x'");
}

TEST_CASE("file writers") {
  const auto dir = fs::temp_directory_path() / "morpho_report_io_test";
  fs::remove_all(dir);
  Timeline tl;
  tl.t = {0.0, 1.0};
  tl.rsa = {1.0, 0.99};
  tl.sed = {0.0, 0.1};
  write_simulation(dir / "sim", tl);
  for (const char* f : {"timeline.csv", "timeline_diagnostics.json", "metrics.json", "metrics.csv"})
    CHECK(fs::exists(dir / "sim" / f));
  CHECK(slurp(dir / "sim" / "timeline.csv") == timeline_csv(tl));

  CohortReport rep;
  rep.n_b = 2;
  ClassCohort c;
  c.class_id = 3;
  c.samples = {SummaryMetrics{0.7, 40, 0.9, 80, 41}, std::nullopt};
  c.errors = {"", "failed"};
  c.failures = 1;
  for (std::size_t m = 0; m < kMetricCount; ++m) c.metrics[m].sorted = {metric(*c.samples[0], m)};
  rep.classes.push_back(c);
  write_cohorts(dir / "coh", rep);
  for (const char* f : {"samples_class3.csv", "cdf_class3.csv", "trajectory_class3.csv", "cohorts.json"})
    CHECK(fs::exists(dir / "coh" / f));
  const auto samples = slurp(dir / "coh" / "samples_class3.csv");
  CHECK(samples == "replicate,RSA_min,RSA_day,RSA_365,SED_max,SED_day\n0,0.7,40,0.9,80,41\n1,,,,,\n");
  CHECK(slurp(dir / "coh" / "cdf_class3.csv") == "rank,F,RSA_min,RSA_day,RSA_365,SED_max,SED_day\n1,1,0.7,40,0.9,80,41\n");
  const auto js = nlohmann::json::parse(slurp(dir / "coh" / "cohorts.json"));
  CHECK(js["classes"][0]["failed_replicates"][0]["replicate"] == 1);

  CHECK_THROWS_AS(write_text("/proc/morpho_cannot_write/x.csv", "x"), IoError);
  fs::remove_all(dir);
}
