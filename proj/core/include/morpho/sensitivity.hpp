#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morpho/observables.hpp"
#include "morpho/parameters.hpp"
#include "morpho/solver.hpp"

namespace morpho {

/// The 30 model parameters plus the wound half-length L_w.
std::vector<std::string> default_quantities();
/// Relative variations {-0.25, -0.20, ..., 0, ..., +0.25}.
std::vector<double> default_variations();

/// Standardizes with the sample mean and sample standard deviation (n - 1).
/// A spread below 1e-12 |mean| yields all zeros.
/// Throws std::invalid_argument for fewer than two or non-finite values.
std::vector<double> z_scores(std::span<const double> values);

struct SensitivityScores {
  std::array<double, kMetricCount> per_metric{};
  double total = 0.0;
  long rounded_total = 0;
};

/// S^r = sum_j |z_j^r| per metric, S_total their sum.
SensitivityScores aggregate(const std::array<std::vector<double>, kMetricCount>& z);

/// Population over which each metric is standardized. `pooled` uses every
/// (quantity, variation) cell of the sweep, so quantities that barely move a
/// metric score low; `per_quantity` standardizes each quantity's own runs.
enum class ZScoreScope { pooled, per_quantity };

struct SensitivityConfig {
  NumericsConfig numerics;
  std::vector<double> variations = default_variations();
  ZScoreScope scope = ZScoreScope::pooled;
  unsigned workers = 1;
  bool half_domain = true;
  /// Called after each finished simulation with (done, total); serialized.
  std::function<void(std::size_t, std::size_t)> progress;
};

struct SensitivityRow {
  std::string quantity;
  std::vector<double> values;                     // varied parameter value per variation
  std::vector<std::optional<SummaryMetrics>> runs;  // nullopt marks a failed cell
  std::vector<std::string> errors;                // message per failed cell, empty otherwise
  std::array<std::vector<double>, kMetricCount> z;  // NaN at failed cells
  SensitivityScores scores;
  std::size_t invalid = 0;
};

struct SensitivityReport {
  ParameterSet baseline;
  std::vector<double> variations;
  ZScoreScope scope = ZScoreScope::pooled;
  std::vector<SensitivityRow> rows;
  std::size_t simulations = 0;  // distinct runs, the shared baseline counted once

  const SensitivityRow* find(std::string_view quantity) const;
  /// Row indices sorted by descending S_total (stable on ties).
  std::vector<std::size_t> ranking() const;
  std::size_t invalid_cells() const;
};

/// One-at-a-time sweep: every quantity is scaled by (1 + variation) with the
/// others held at `baseline`; q and k_rho are re-derived for each run. The
/// zero variation is simulated once and shared, but enters every row's
/// z-scores (31 x 11 cells for the default sweep). Throws ConfigError for an
/// unknown quantity, a variation list without 0 or an invalid baseline.
SensitivityReport run_sensitivity(const ParameterSet& baseline, const std::vector<std::string>& quantities,
                                  const SensitivityConfig& cfg);

}  // namespace morpho
