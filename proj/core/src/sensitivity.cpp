#include "morpho/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "morpho/errors.hpp"
#include "morpho/parallel.hpp"

namespace morpho {

std::vector<std::string> default_quantities() {
  return {"N_bar",  "rho_bar", "N_tilde", "c_tilde", "rho_tilde", "delta_N", "delta_M", "delta_c",
          "delta_rho", "a_c_I", "a_c_II", "a_c_III", "a_c_IV",  "eta_I",   "eta_II",  "k_F",
          "D_F",    "D_c",     "chi_F",   "r_F",     "k_c",       "r_F_max", "k_rho_max", "kappa_F",
          "xi",     "R",       "mu",      "E",       "zeta",      "rho_t",   "L_w"};
}

std::vector<double> default_variations() {
  return {-0.25, -0.20, -0.15, -0.10, -0.05, 0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
}

std::vector<double> z_scores(std::span<const double> values) {
  if (values.size() < 2) throw std::invalid_argument("z_scores: at least two values required");
  if (!std::all_of(values.begin(), values.end(), [](double x) { return std::isfinite(x); }))
    throw std::invalid_argument("z_scores: non-finite value");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  std::vector<double> z(values.size(), 0.0);
  if (sd <= 1e-12 * std::abs(mean) || sd == 0.0) return z;
  for (std::size_t i = 0; i < values.size(); ++i) z[i] = (values[i] - mean) / sd;
  return z;
}

SensitivityScores aggregate(const std::array<std::vector<double>, kMetricCount>& z) {
  SensitivityScores s;
  for (std::size_t r = 0; r < kMetricCount; ++r) {
    double sum = 0.0;
    for (double v : z[r])
      if (std::isfinite(v)) sum += std::abs(v);
    s.per_metric[r] = sum;
    s.total += sum;
  }
  s.rounded_total = std::lround(s.total);
  return s;
}

const SensitivityRow* SensitivityReport::find(std::string_view quantity) const {
  for (const auto& row : rows)
    if (row.quantity == quantity) return &row;
  return nullptr;
}

std::vector<std::size_t> SensitivityReport::ranking() const {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].scores.total > rows[b].scores.total; });
  return order;
}

std::size_t SensitivityReport::invalid_cells() const {
  std::size_t n = 0;
  for (const auto& row : rows) n += row.invalid;
  return n;
}

namespace {

struct Job {
  std::size_t row;
  std::size_t column;  // variation index; the shared baseline job has row == npos
  ParameterSet params;
};

// Standardizes each metric over the cells of `rows` jointly; failed cells stay NaN.
void standardize(std::span<SensitivityRow> rows) {
  for (std::size_t r = 0; r < kMetricCount; ++r) {
    std::vector<double> values;
    for (auto& row : rows) {
      row.z[r].assign(row.runs.size(), std::nan(""));
      for (const auto& run : row.runs)
        if (run) values.push_back(metric(*run, r));
    }
    if (values.size() < 2) continue;
    const auto z = z_scores(values);
    std::size_t k = 0;
    for (auto& row : rows)
      for (std::size_t j = 0; j < row.runs.size(); ++j)
        if (row.runs[j]) row.z[r][j] = z[k++];
  }
}

}  // namespace

SensitivityReport run_sensitivity(const ParameterSet& baseline, const std::vector<std::string>& quantities,
                                  const SensitivityConfig& cfg) {
  if (!cfg.numerics.valid()) throw ConfigError("invalid numerics configuration");
  const auto zero = std::find(cfg.variations.begin(), cfg.variations.end(), 0.0);
  if (zero == cfg.variations.end()) throw ConfigError("variation list must contain 0");
  const auto zero_index = static_cast<std::size_t>(zero - cfg.variations.begin());
  if (const auto report = validate(baseline); !report.all_passed())
    throw ConfigError("baseline parameters fail validation");
  for (const auto& q : quantities)
    if (!find_parameter_field(q)) throw ConfigError("unknown sensitivity quantity: " + q);

  SensitivityReport out;
  out.baseline = baseline;
  out.variations = cfg.variations;
  out.scope = cfg.scope;
  out.rows.resize(quantities.size());

  constexpr std::size_t kShared = static_cast<std::size_t>(-1);
  std::vector<Job> jobs;
  jobs.push_back({kShared, zero_index, baseline});
  for (std::size_t i = 0; i < quantities.size(); ++i) {
    auto& row = out.rows[i];
    row.quantity = quantities[i];
    row.runs.resize(cfg.variations.size());
    row.errors.resize(cfg.variations.size());
    const double base_value = get_parameter(baseline, quantities[i]);
    for (std::size_t j = 0; j < cfg.variations.size(); ++j) {
      row.values.push_back(base_value * (1.0 + cfg.variations[j]));
      if (j == zero_index) continue;
      ParameterSet p = baseline;
      set_parameter(p, quantities[i], row.values.back());
      jobs.push_back({i, j, p});
    }
  }
  out.simulations = jobs.size();

  std::vector<std::optional<SummaryMetrics>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::mutex progress_mutex;
  std::size_t done = 0;
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t k) {
    try {
      const auto& p = jobs[k].params;
      results[k] = summarize(simulate(p, domain_from(p, cfg.half_domain), cfg.numerics));
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
    if (cfg.progress) {
      std::lock_guard lock(progress_mutex);
      cfg.progress(++done, jobs.size());
    }
  });

  for (std::size_t k = 0; k < jobs.size(); ++k) {
    if (jobs[k].row == kShared) {
      for (auto& row : out.rows) {
        row.runs[zero_index] = results[k];
        row.errors[zero_index] = errors[k];
      }
    } else {
      out.rows[jobs[k].row].runs[jobs[k].column] = results[k];
      out.rows[jobs[k].row].errors[jobs[k].column] = errors[k];
    }
  }
  for (auto& row : out.rows)
    row.invalid = static_cast<std::size_t>(std::count(row.runs.begin(), row.runs.end(), std::nullopt));
  if (cfg.scope == ZScoreScope::pooled) {
    standardize(out.rows);
  } else {
    for (auto& row : out.rows) standardize(std::span(&row, 1));
  }
  for (auto& row : out.rows) row.scores = aggregate(row.z);
  return out;
}

}  // namespace morpho
