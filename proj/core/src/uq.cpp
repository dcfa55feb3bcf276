#include "morpho/uq.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "morpho/discretization.hpp"
#include "morpho/errors.hpp"
#include "morpho/initial_conditions.hpp"
#include "morpho/parallel.hpp"

namespace morpho {

double kl_sample(const KLSpec& spec, std::span<const double> Z, double X) {
  if (Z.size() != spec.n) throw std::invalid_argument("kl_sample: expected one coefficient per mode");
  const double norm = std::sqrt(2.0 / static_cast<double>(spec.n));
  double u = 0.0;
  for (std::size_t j = 1; j <= spec.n; ++j)
    u += Z[j - 1] * norm * std::sin((2.0 * static_cast<double>(j) - 1.0) * std::numbers::pi * X /
                                    (2.0 * spec.domain_length));
  return u;
}

LognormalMoments lognormal_moments(double mean, double sd) {
  if (!(mean > 0.0)) throw std::invalid_argument("lognormal_moments: mean must be positive");
  if (!(sd >= 0.0)) throw std::invalid_argument("lognormal_moments: sd must be nonnegative");
  const double ratio = 1.0 + sd * sd / (mean * mean);
  return {std::log(mean / std::sqrt(ratio)), std::sqrt(std::log(ratio))};
}

std::vector<double> lognormal_field(double mean, double sd, std::span<const double> u) {
  const auto [M, S] = lognormal_moments(mean, sd);
  std::vector<double> out(u.size());
  if (S == 0.0) {
    std::fill(out.begin(), out.end(), mean);
    return out;
  }
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::exp(M + S * u[i]);
  return out;
}

SpatialParameters sample_patient(const ParameterSet& class_means, const AgeClassProfile& profile, const KLSpec& kl,
                                 std::span<const double> points, std::mt19937_64& rng) {
  if (!kl.valid()) throw ConfigError("invalid KL specification");
  SpatialParameters out(class_means);
  std::normal_distribution<double> normal;
  std::vector<double> Z(kl.n), u(points.size());
  for (const auto& [key, sd] : profile.heterogeneity_sd) {  // std::map: sorted keys
    if (!(sd > 0.0)) continue;
    for (auto& z : Z) z = normal(rng);
    for (std::size_t i = 0; i < points.size(); ++i) u[i] = kl_sample(kl, Z, points[i]);
    out.set_field(key, lognormal_field(get_parameter(class_means, key), sd, u));
  }
  return out;
}

std::mt19937_64 replicate_rng(std::uint64_t master_seed, int class_id, std::size_t replicate) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(class_id), static_cast<std::uint32_t>(replicate),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(replicate) >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> ClassCohort::values(std::size_t metric_index) const {
  std::vector<double> v;
  for (const auto& s : samples)
    if (s) v.push_back(metric(*s, metric_index));
  return v;
}

const ClassCohort* CohortReport::find(int class_id) const {
  for (const auto& c : classes)
    if (c.class_id == class_id) return &c;
  return nullptr;
}

const PairTest* CohortReport::find_pair(int a, int b) const {
  for (const auto& p : pairs)
    if ((p.class_a == a && p.class_b == b) || (p.class_a == b && p.class_b == a)) return &p;
  return nullptr;
}

namespace {

MetricSummary summarize_metric(const std::vector<double>& v) {
  MetricSummary m;
  if (v.size() >= 2) m.stats = cohort_stats(v);
  m.sorted = v;
  std::sort(m.sorted.begin(), m.sorted.end());
  return m;
}

TrajectoryBand band(const std::vector<const Timeline*>& runs) {
  TrajectoryBand b;
  if (runs.size() < 2) return b;
  b.t = runs.front()->t;
  const std::size_t n_t = b.t.size();
  std::vector<double> column(runs.size());
  for (std::size_t series = 0; series < 2; ++series) {
    for (std::size_t i = 0; i < n_t; ++i) {
      for (std::size_t k = 0; k < runs.size(); ++k)
        column[k] = series == 0 ? runs[k]->rsa.at(i) : runs[k]->sed.at(i);
      const auto s = cohort_stats(column);
      b.mean[series].push_back(s.mean);
      b.ci_low[series].push_back(s.ci_low);
      b.ci_high[series].push_back(s.ci_high);
    }
  }
  return b;
}

}  // namespace

CohortReport run_cohorts(const CohortConfig& cfg) {
  if (cfg.n_b < 2) throw ConfigError("n_b must be at least 2");
  if (!cfg.kl.valid()) throw ConfigError("invalid KL specification");
  if (!cfg.numerics.valid()) throw ConfigError("invalid numerics configuration");
  if (cfg.classes.empty()) throw ConfigError("no age classes selected");
  const ParameterTable& table = cfg.table ? *cfg.table : ParameterTable::bundled();

  struct ClassInput {
    ParameterSet means;
    AgeClassProfile profile;
    DomainSpec spec;
    MovingMesh mesh;
    std::vector<double> points;
  };
  std::vector<ClassInput> inputs;
  for (int id : cfg.classes) {
    if (id < 1 || id > 4) throw ConfigError("unknown age class " + std::to_string(id));
    ClassInput in;
    in.means = table.age_profile(id);
    for (const auto& [key, value] : cfg.overrides) {
      if (!find_parameter_field(key)) throw ConfigError("unknown parameter: " + key);
      set_parameter(in.means, key, value);
    }
    in.profile = table.profile(id);
    in.spec = domain_from(in.means, cfg.half_domain);
    in.mesh = build_mesh(in.spec, cfg.numerics.n_elements);
    in.points = in.mesh.initial_midpoints();
    inputs.push_back(std::move(in));
  }

  const std::size_t total = inputs.size() * cfg.n_b;
  std::vector<std::optional<Timeline>> timelines(total);
  std::vector<std::string> errors(total);
  std::mutex progress_mutex;
  std::size_t done = 0;
  parallel_for(total, cfg.workers, [&](std::size_t k) {
    const std::size_t c = k / cfg.n_b, r = k % cfg.n_b;
    const auto& in = inputs[c];
    try {
      auto rng = replicate_rng(cfg.seed, cfg.classes[c], r);
      const auto patient = sample_patient(in.means, in.profile, cfg.kl, in.points, rng);
      const Material material = make_material(patient, in.mesh);
      timelines[k] = simulate(material, build_initial_state(material.mean, in.spec, in.mesh), cfg.numerics);
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
    if (cfg.progress) {
      std::lock_guard lock(progress_mutex);
      cfg.progress(++done, total);
    }
  });

  CohortReport out;
  out.seed = cfg.seed;
  out.n_b = cfg.n_b;
  out.alpha = cfg.alpha;
  for (std::size_t c = 0; c < inputs.size(); ++c) {
    ClassCohort cohort;
    cohort.class_id = cfg.classes[c];
    std::vector<const Timeline*> ok;
    for (std::size_t r = 0; r < cfg.n_b; ++r) {
      const std::size_t k = c * cfg.n_b + r;
      cohort.errors.push_back(errors[k]);
      if (timelines[k]) {
        cohort.samples.push_back(summarize(*timelines[k]));
        ok.push_back(&*timelines[k]);
      } else {
        cohort.samples.push_back(std::nullopt);
        ++cohort.failures;
      }
    }
    for (std::size_t m = 0; m < kMetricCount; ++m) cohort.metrics[m] = summarize_metric(cohort.values(m));
    cohort.trajectory = band(ok);
    out.classes.push_back(std::move(cohort));
  }

  for (std::size_t a = 0; a < out.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < out.classes.size(); ++b) {
      const auto& A = out.classes[a];
      const auto& B = out.classes[b];
      PairTest pt{A.class_id, B.class_id, {}};
      for (std::size_t m = 0; m < kMetricCount; ++m) {
        const auto& sa = A.metrics[m].stats;
        const auto& sb = B.metrics[m].stats;
        if (sa.n < 2 || sb.n < 2) {
          pt.tests[m].t = std::nan("");
          continue;
        }
        pt.tests[m] = t_statistic_from_moments(sa.mean, sa.variance, sa.n, sb.mean, sb.variance, sb.n, cfg.alpha);
      }
      out.pairs.push_back(pt);
    }
  }
  return out;
}

}  // namespace morpho
