#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morpho/observables.hpp"
#include "morpho/parameters.hpp"
#include "morpho/solver.hpp"
#include "morpho/statistics.hpp"

namespace morpho {

struct KLSpec {
  std::size_t n = 20;           // number of modes
  double domain_length = 20.0;  // |Omega| = 2L, cm

  bool valid() const { return n >= 1 && domain_length > 0.0; }
};

/// u(X) = sum_j Z_j sqrt(2/n) sin((2j - 1) pi X / (2 |Omega|)), j = 1..n.
/// Throws std::invalid_argument when Z.size() != spec.n.
double kl_sample(const KLSpec& spec, std::span<const double> Z, double X);

/// Log-space location and scale matching the arithmetic mean and SD.
struct LognormalMoments {
  double M = 0.0;
  double S = 0.0;
};
/// Throws std::invalid_argument for mean <= 0 or sd < 0.
LognormalMoments lognormal_moments(double mean, double sd);
/// exp(M + S u) pointwise.
std::vector<double> lognormal_field(double mean, double sd, std::span<const double> u);

/// Heterogeneous realization for one patient: every parameter with a positive
/// SD gets its own KL field (fresh Z per parameter, keys in sorted order)
/// evaluated at `points` and mapped through lognormal_field around the class
/// mean; all other parameters keep the class means.
SpatialParameters sample_patient(const ParameterSet& class_means, const AgeClassProfile& profile, const KLSpec& kl,
                                 std::span<const double> points, std::mt19937_64& rng);

/// Generator for replicate `replicate` of class `class_id`.
std::mt19937_64 replicate_rng(std::uint64_t master_seed, int class_id, std::size_t replicate);

struct CohortConfig {
  NumericsConfig numerics;
  KLSpec kl;
  std::size_t n_b = 50;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double alpha = 0.001;
  bool half_domain = true;
  std::vector<int> classes = {1, 2, 3, 4};
  /// Parameter tables; null selects the bundled ones.
  const ParameterTable* table = nullptr;
  /// Applied on top of every class's means.
  std::vector<std::pair<std::string, double>> overrides;
  std::function<void(std::size_t, std::size_t)> progress;
};

struct MetricSummary {
  SampleStats stats;
  std::vector<double> sorted;  // empirical CDF support
};

/// Pointwise mean and 95% CI of the sampled trajectories.
struct TrajectoryBand {
  std::vector<double> t;
  std::array<std::vector<double>, 2> mean;  // RSA, SED
  std::array<std::vector<double>, 2> ci_low;
  std::array<std::vector<double>, 2> ci_high;
};

struct ClassCohort {
  int class_id = 0;
  std::vector<std::optional<SummaryMetrics>> samples;  // nullopt marks a failed replicate
  std::vector<std::string> errors;
  std::size_t failures = 0;
  std::array<MetricSummary, kMetricCount> metrics;
  TrajectoryBand trajectory;

  std::vector<double> values(std::size_t metric_index) const;
};

struct PairTest {
  int class_a = 0;
  int class_b = 0;
  std::array<TTest, kMetricCount> tests;
};

struct CohortReport {
  std::uint64_t seed = 0;
  std::size_t n_b = 0;
  double alpha = 0.001;
  std::vector<ClassCohort> classes;
  std::vector<PairTest> pairs;  // every (a, b) with a < b in class order

  const ClassCohort* find(int class_id) const;
  const PairTest* find_pair(int a, int b) const;
};

/// n_b patient simulations per class, statistics per metric and the pairwise
/// t-table. Deterministic in cfg.seed regardless of the worker count. Throws
/// ConfigError for n_b < 2, an invalid KL spec or unknown class.
CohortReport run_cohorts(const CohortConfig& cfg);

}  // namespace morpho
