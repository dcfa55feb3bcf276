#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "morpho/observables.hpp"
#include "morpho/sensitivity.hpp"
#include "morpho/solver.hpp"
#include "morpho/uq.hpp"

namespace morpho {

/// Shortest round-trip decimal, locale independent; NaN/Inf become "".
std::string format_number(double x);

/// `t,rsa,sed` rows.
std::string timeline_csv(const Timeline& tl);
std::string timeline_diagnostics_json(const Timeline& tl);

std::string metrics_json(const SummaryMetrics& m);
std::string metrics_csv_header();
std::string metrics_csv_row(const SummaryMetrics& m);

/// One row per quantity: parameter, S_RSA_min, ..., S_SED_day, S_total.
std::string sensitivity_csv(const SensitivityReport& report);
/// Baseline, variations, every run's metrics, z-scores and raw/rounded scores.
std::string sensitivity_json(const SensitivityReport& report);

/// Per-replicate metrics of one class (failed replicates have empty fields).
std::string cohort_samples_csv(const ClassCohort& cohort);
/// Sorted metric values with F = rank / n, one column per metric.
std::string cohort_cdf_csv(const ClassCohort& cohort);
std::string cohort_trajectory_csv(const ClassCohort& cohort);
std::string cohort_json(const CohortReport& report);

/// {"error": {"category": ..., "exit_code": ..., "message": ...}}
std::string error_json(std::string_view category, int exit_code, std::string_view message);

/// Writes `text` to `path`, creating parent directories. Throws IoError.
void write_text(const std::filesystem::path& path, std::string_view text);

/// timeline.csv, timeline_diagnostics.json, metrics.json, metrics.csv
void write_simulation(const std::filesystem::path& dir, const Timeline& tl);
/// sensitivity.csv, sensitivity.json
void write_sensitivity(const std::filesystem::path& dir, const SensitivityReport& report);
/// samples_class<k>.csv, cdf_class<k>.csv, trajectory_class<k>.csv, cohorts.json
void write_cohorts(const std::filesystem::path& dir, const CohortReport& report);

}  // namespace morpho
