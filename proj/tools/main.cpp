// morpho: command-line driver for single simulations, the one-at-a-time
// sensitivity sweep and the age-cohort Monte Carlo study.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morpho/errors.hpp"
#include "morpho/initial_conditions.hpp"
#include "morpho/parallel.hpp"
#include "morpho/parameters.hpp"
#include "morpho/report_io.hpp"
#include "morpho/sensitivity.hpp"
#include "morpho/solver.hpp"
#include "morpho/uq.hpp"

namespace {

using KeyValues = std::map<std::string, std::string, std::less<>>;

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4, kInternal = 5 };

struct RunConfig {
  std::string params_file;
  std::vector<std::string> sets;
  int class_id = 2;
  std::optional<double> dt;
  std::optional<std::size_t> elements;
  unsigned workers = morpho::default_workers();
  std::uint64_t seed = 1;
  std::filesystem::path out = "morpho_out";
  bool full_domain = false;
  bool quiet = false;
  // sensitivity
  std::string variations = "default";
  std::string quantities = "default";
  morpho::ZScoreScope scope = morpho::ZScoreScope::pooled;
  // cohorts
  std::size_t n_b = 50;
  std::vector<int> classes = {1, 2, 3, 4};
  std::size_t kl_modes = 20;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

KeyValues gather_overrides(const RunConfig& rc) {
  KeyValues kv;
  if (!rc.params_file.empty()) kv = morpho::read_key_values(rc.params_file);
  for (const auto& s : rc.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw morpho::ConfigError("--set expects key=value, got '" + s + "'");
    auto key = s.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    kv[key] = s.substr(eq + 1);
  }
  return kv;
}

/// Splits overrides into model parameters (applied to `p`) and numerics keys.
morpho::NumericsConfig resolve(const RunConfig& rc, const KeyValues& kv, morpho::ParameterSet* p) {
  KeyValues rest;
  if (p) {
    morpho::apply_overrides(*p, kv, &rest);
  } else {
    for (const auto& [k, v] : kv)
      if (!morpho::find_parameter_field(k)) rest.emplace(k, v);
  }
  morpho::NumericsConfig cfg;
  for (const auto& [key, value] : rest) {
    const double x = morpho::parse_double(value);
    if (key == "dt") cfg.dt = x;
    else if (key == "picard_tol") cfg.picard_tol = x;
    else if (key == "picard_max") cfg.picard_max = static_cast<int>(x);
    else if (key == "dt_min") cfg.dt_min = x;
    else if (key == "output_stride") cfg.output_stride = x;
    else if (key == "n_elements") cfg.n_elements = static_cast<std::size_t>(x);
    else if (key == "negative_tolerance") cfg.negative_tolerance = x;
    else throw morpho::ConfigError("unknown parameter: " + key);
  }
  if (rc.dt) cfg.dt = *rc.dt;
  if (rc.elements) cfg.n_elements = *rc.elements;
  if (!cfg.valid()) throw morpho::ConfigError("invalid numerics configuration");
  return cfg;
}

std::function<void(std::size_t, std::size_t)> progress_printer(const RunConfig& rc, const char* what) {
  if (rc.quiet) return {};
  return [what, last = std::size_t{0}](std::size_t done, std::size_t total) mutable {
    const std::size_t pct = 100 * done / total;
    if (pct / 10 != last / 10 || done == total) {
      std::cerr << what << ": " << done << "/" << total << " runs\n";
      last = pct;
    }
  };
}

void warn_validation(const morpho::ParameterSet& p) {
  for (const auto& c : morpho::validate(p).checks)
    if (!c.passed) std::cerr << "warning: constraint " << c.name << " fails: " << c.detail << "\n";
}

int run_simulate(const RunConfig& rc) {
  auto p = morpho::age_profile(rc.class_id);
  const auto cfg = resolve(rc, gather_overrides(rc), &p);
  warn_validation(p);
  const auto tl = morpho::simulate(p, morpho::domain_from(p, !rc.full_domain), cfg);
  morpho::write_simulation(rc.out, tl);
  if (!rc.quiet) std::cout << morpho::metrics_json(morpho::summarize(tl));
  return kOk;
}

int run_sensitivity(const RunConfig& rc) {
  auto p = morpho::age_profile(rc.class_id);
  morpho::SensitivityConfig sc;
  sc.numerics = resolve(rc, gather_overrides(rc), &p);
  sc.workers = rc.workers;
  sc.scope = rc.scope;
  sc.half_domain = !rc.full_domain;
  sc.progress = progress_printer(rc, "sensitivity");
  if (rc.variations != "default") {
    sc.variations.clear();
    for (const auto& v : split(rc.variations, ',')) sc.variations.push_back(morpho::parse_double(v) / 100.0);
  }
  const auto quantities = rc.quantities == "default" ? morpho::default_quantities() : split(rc.quantities, ',');
  const auto report = morpho::run_sensitivity(p, quantities, sc);
  morpho::write_sensitivity(rc.out, report);
  if (const auto bad = report.invalid_cells(); bad > 0)
    std::cerr << "warning: " << bad << " failed simulation cells excluded from the scores\n";
  if (!rc.quiet) std::cout << morpho::sensitivity_csv(report);
  return kOk;
}

int run_cohorts(const RunConfig& rc) {
  const auto kv = gather_overrides(rc);
  morpho::CohortConfig cc;
  cc.numerics = resolve(rc, kv, nullptr);
  for (const auto& [k, v] : kv)
    if (morpho::find_parameter_field(k)) cc.overrides.emplace_back(k, morpho::parse_double(v));
  cc.n_b = rc.n_b;
  cc.seed = rc.seed;
  cc.workers = rc.workers;
  cc.classes = rc.classes;
  cc.kl.n = rc.kl_modes;
  cc.half_domain = !rc.full_domain;
  const auto probe = morpho::age_profile(2);
  cc.kl.domain_length = 2.0 * probe.L;
  cc.progress = progress_printer(rc, "cohorts");
  const auto report = morpho::run_cohorts(cc);
  morpho::write_cohorts(rc.out, report);
  std::size_t failures = 0;
  for (const auto& c : report.classes) failures += c.failures;
  if (failures > 0) std::cerr << "warning: " << failures << " failed replicates excluded from the statistics\n";
  if (!rc.quiet) std::cout << morpho::cohort_json(report);
  return kOk;
}

int fail(const RunConfig& rc, const char* category, int code, const std::string& message) {
  const auto text = morpho::error_json(category, code, message);
  std::cerr << text;
  try {
    morpho::write_text(rc.out / "error.json", text);
  } catch (const std::exception&) {
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morphoelastic burn-contraction simulator"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_common = [&rc](CLI::App* cmd) {
    cmd->add_option("--params", rc.params_file, "Parameter file (key = value lines or JSON object)");
    cmd->add_option("--set", rc.sets, "Override key=value (repeatable)");
    cmd->add_option("--dt", rc.dt, "Time step in days");
    cmd->add_option("--elements", rc.elements, "Number of finite elements");
    cmd->add_option("--out", rc.out, "Output directory");
    cmd->add_flag("--full-domain", rc.full_domain, "Simulate [-L, L] instead of the half domain");
    cmd->add_flag("-q,--quiet", rc.quiet, "Suppress progress and summaries");
  };

  auto* sim = app.add_subcommand("simulate", "Run one simulation and write timeline.csv and metrics.json");
  add_common(sim);
  sim->add_option("--class", rc.class_id, "Age class providing the parameter means")->check(CLI::Range(1, 4));

  auto* sens = app.add_subcommand("sensitivity", "One-at-a-time z-score sensitivity sweep");
  add_common(sens);
  sens->add_option("--class", rc.class_id, "Age class providing the baseline")->check(CLI::Range(1, 4));
  sens->add_option("--variations", rc.variations, "'default' or comma-separated percentages");
  sens->add_option("--quantities", rc.quantities, "'default' or comma-separated parameter keys");
  const std::map<std::string, morpho::ZScoreScope> scopes = {{"pooled", morpho::ZScoreScope::pooled},
                                                             {"per-quantity", morpho::ZScoreScope::per_quantity}};
  sens->add_option("--zscore-scope", rc.scope, "Standardize each metric over the whole sweep or per quantity")
      ->transform(CLI::CheckedTransformer(scopes, CLI::ignore_case));
  sens->add_option("--workers", rc.workers, "Concurrent simulations")->check(CLI::PositiveNumber);

  auto* coh = app.add_subcommand("cohorts", "Monte Carlo age-cohort study");
  add_common(coh);
  coh->add_option("--nb", rc.n_b, "Patients per age class")->check(CLI::Range(2, 1000000));
  coh->add_option("--seed", rc.seed, "Master seed");
  coh->add_option("--classes", rc.classes, "Age classes to simulate")->delimiter(',')->check(CLI::Range(1, 4));
  coh->add_option("--kl-modes", rc.kl_modes, "Karhunen-Loeve truncation order")->check(CLI::PositiveNumber);
  coh->add_option("--workers", rc.workers, "Concurrent simulations")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(rc, "config", kConfig, e.what());
  }

  try {
    if (*sim) return run_simulate(rc);
    if (*sens) return run_sensitivity(rc);
    return run_cohorts(rc);
  } catch (const morpho::ConfigError& e) {
    return fail(rc, "config", kConfig, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(rc, "config", kConfig, e.what());
  } catch (const std::domain_error& e) {
    return fail(rc, "config", kConfig, e.what());
  } catch (const morpho::NumericalError& e) {
    return fail(rc, "numerical", kNumerical, e.what());
  } catch (const morpho::IoError& e) {
    return fail(rc, "io", kIo, e.what());
  } catch (const std::exception& e) {
    return fail(rc, "internal", kInternal, e.what());
  }
}
