#include "morpho/report_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "morpho/errors.hpp"

namespace morpho {

using nlohmann::ordered_json;

std::string format_number(double x) {
  if (!std::isfinite(x)) return {};
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json to_json(const SummaryMetrics& m) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 0; i < kMetricCount; ++i) j[std::string(kMetricNames[i])] = number(metric(m, i));
  return j;
}

ordered_json to_json(const StepDiagnostics& d) {
  return {{"accepted_steps", d.accepted_steps}, {"picard_iterations", d.picard_iterations},
          {"max_picard", d.max_picard},         {"rejections", d.rejections},
          {"clipped_values", d.clipped_values}, {"zeroed_negatives", d.zeroed_negatives},
          {"min_dt", number(d.min_dt)}};
}

ordered_json to_json(const SampleStats& s) {
  return {{"n", s.n},
          {"mean", number(s.mean)},
          {"variance", number(s.variance)},
          {"ci95", {number(s.ci_low), number(s.ci_high)}}};
}

ordered_json to_json(const ParameterSet& p) {
  ordered_json j = ordered_json::object();
  for (const auto& f : parameter_fields()) j[std::string(f.key)] = number(p.*(f.member));
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string timeline_csv(const Timeline& tl) {
  std::string out = "t,rsa,sed\n";
  for (std::size_t i = 0; i < tl.t.size(); ++i)
    out += format_number(tl.t[i]) + ',' + format_number(tl.rsa[i]) + ',' + format_number(tl.sed[i]) + '\n';
  return out;
}

std::string timeline_diagnostics_json(const Timeline& tl) {
  ordered_json j;
  j["samples"] = tl.t.size();
  j["diagnostics"] = to_json(tl.diagnostics);
  return dump(j);
}

std::string metrics_json(const SummaryMetrics& m) { return dump(to_json(m)); }

std::string metrics_csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kMetricCount; ++i) out += (i ? "," : "") + std::string(kMetricNames[i]);
  return out + '\n';
}

std::string metrics_csv_row(const SummaryMetrics& m) {
  std::string out;
  for (std::size_t i = 0; i < kMetricCount; ++i) out += (i ? "," : "") + format_number(metric(m, i));
  return out + '\n';
}

std::string sensitivity_csv(const SensitivityReport& report) {
  std::string out = "parameter";
  for (auto name : kMetricNames) out += ",S_" + std::string(name);
  out += ",S_total\n";
  for (const auto& row : report.rows) {
    out += row.quantity;
    for (double s : row.scores.per_metric) out += ',' + format_number(s);
    out += ',' + format_number(row.scores.total) + '\n';
  }
  return out;
}

std::string sensitivity_json(const SensitivityReport& report) {
  ordered_json j;
  j["baseline"] = to_json(report.baseline);
  j["variations"] = report.variations;
  j["z_score_scope"] = report.scope == ZScoreScope::pooled ? "pooled" : "per_quantity";
  j["simulations"] = report.simulations;
  j["invalid_cells"] = report.invalid_cells();
  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["parameter"] = row.quantity;
    r["values"] = row.values;
    ordered_json runs = ordered_json::array();
    for (std::size_t k = 0; k < row.runs.size(); ++k) {
      if (row.runs[k])
        runs.push_back(to_json(*row.runs[k]));
      else
        runs.push_back({{"error", row.errors[k]}});
    }
    r["runs"] = runs;
    ordered_json z = ordered_json::object();
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      ordered_json col = ordered_json::array();
      for (double v : row.z[m]) col.push_back(number(v));
      z[std::string(kMetricNames[m])] = col;
    }
    r["z_scores"] = z;
    ordered_json scores = ordered_json::object();
    for (std::size_t m = 0; m < kMetricCount; ++m)
      scores["S_" + std::string(kMetricNames[m])] = number(row.scores.per_metric[m]);
    scores["S_total"] = number(row.scores.total);
    scores["S_total_rounded"] = row.scores.rounded_total;
    r["scores"] = scores;
    r["invalid"] = row.invalid;
    rows.push_back(r);
  }
  j["rows"] = rows;
  ordered_json ranking = ordered_json::array();
  for (auto i : report.ranking()) ranking.push_back(report.rows[i].quantity);
  j["ranking"] = ranking;
  return dump(j);
}

std::string cohort_samples_csv(const ClassCohort& cohort) {
  std::string out = "replicate," + metrics_csv_header();
  for (std::size_t r = 0; r < cohort.samples.size(); ++r) {
    out += std::to_string(r) + ',';
    if (cohort.samples[r])
      out += metrics_csv_row(*cohort.samples[r]);
    else
      out += std::string(kMetricCount - 1, ',') + '\n';
  }
  return out;
}

std::string cohort_cdf_csv(const ClassCohort& cohort) {
  const std::size_t n = cohort.metrics[0].sorted.size();
  std::string out = "rank,F," + metrics_csv_header();
  for (std::size_t i = 0; i < n; ++i) {
    out += std::to_string(i + 1) + ',' + format_number(static_cast<double>(i + 1) / static_cast<double>(n));
    for (const auto& m : cohort.metrics) out += ',' + format_number(m.sorted[i]);
    out += '\n';
  }
  return out;
}

std::string cohort_trajectory_csv(const ClassCohort& cohort) {
  const auto& b = cohort.trajectory;
  std::string out = "t,rsa_mean,rsa_ci_low,rsa_ci_high,sed_mean,sed_ci_low,sed_ci_high\n";
  for (std::size_t i = 0; i < b.t.size(); ++i) {
    out += format_number(b.t[i]);
    for (std::size_t s = 0; s < 2; ++s)
      out += ',' + format_number(b.mean[s][i]) + ',' + format_number(b.ci_low[s][i]) + ',' +
             format_number(b.ci_high[s][i]);
    out += '\n';
  }
  return out;
}

std::string cohort_json(const CohortReport& report) {
  ordered_json j;
  j["seed"] = report.seed;
  j["n_b"] = report.n_b;
  j["alpha"] = report.alpha;
  ordered_json classes = ordered_json::array();
  for (const auto& c : report.classes) {
    ordered_json cj;
    cj["class"] = c.class_id;
    cj["failures"] = c.failures;
    ordered_json failed = ordered_json::array();
    for (std::size_t r = 0; r < c.errors.size(); ++r)
      if (!c.errors[r].empty()) failed.push_back({{"replicate", r}, {"error", c.errors[r]}});
    cj["failed_replicates"] = failed;
    ordered_json metrics = ordered_json::object();
    for (std::size_t m = 0; m < kMetricCount; ++m) metrics[std::string(kMetricNames[m])] = to_json(c.metrics[m].stats);
    cj["metrics"] = metrics;
    classes.push_back(cj);
  }
  j["classes"] = classes;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : report.pairs) {
    ordered_json pj;
    pj["classes"] = {p.class_a, p.class_b};
    ordered_json tests = ordered_json::object();
    for (std::size_t m = 0; m < kMetricCount; ++m) {
      const auto& t = p.tests[m];
      tests[std::string(kMetricNames[m])] = {
          {"t", number(t.t)}, {"df", t.df}, {"critical", number(t.critical)}, {"reject", t.reject}};
    }
    pj["tests"] = tests;
    pairs.push_back(pj);
  }
  j["t_tests"] = pairs;
  return dump(j);
}

std::string error_json(std::string_view category, int exit_code, std::string_view message) {
  ordered_json j;
  j["error"] = {{"category", category}, {"exit_code", exit_code}, {"message", message}};
  return j.dump() + "\n";
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_simulation(const std::filesystem::path& dir, const Timeline& tl) {
  const auto m = summarize(tl);
  write_text(dir / "timeline.csv", timeline_csv(tl));
  write_text(dir / "timeline_diagnostics.json", timeline_diagnostics_json(tl));
  write_text(dir / "metrics.json", metrics_json(m));
  write_text(dir / "metrics.csv", metrics_csv_header() + metrics_csv_row(m));
}

void write_sensitivity(const std::filesystem::path& dir, const SensitivityReport& report) {
  write_text(dir / "sensitivity.csv", sensitivity_csv(report));
  write_text(dir / "sensitivity.json", sensitivity_json(report));
}

void write_cohorts(const std::filesystem::path& dir, const CohortReport& report) {
  for (const auto& c : report.classes) {
    const auto k = std::to_string(c.class_id);
    write_text(dir / ("samples_class" + k + ".csv"), cohort_samples_csv(c));
    write_text(dir / ("cdf_class" + k + ".csv"), cohort_cdf_csv(c));
    write_text(dir / ("trajectory_class" + k + ".csv"), cohort_trajectory_csv(c));
  }
  write_text(dir / "cohorts.json", cohort_json(report));
}

}  // namespace morpho
