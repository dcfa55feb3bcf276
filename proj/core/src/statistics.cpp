#include "morpho/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace morpho {

double student_t_critical(double df, double tail) {
  if (!(df > 0.0) || !(tail > 0.0 && tail < 1.0)) throw std::invalid_argument("student_t_critical: bad arguments");
  const boost::math::students_t dist(df);
  return boost::math::quantile(boost::math::complement(dist, tail));
}

SampleStats cohort_stats(std::span<const double> samples) {
  if (samples.size() < 2) throw std::invalid_argument("cohort_stats: at least two samples required");
  SampleStats s;
  s.n = samples.size();
  const double n = static_cast<double>(s.n);
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean = sum / n;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) {
    s.mean = *lo;
    s.ci_low = s.ci_high = s.mean;
    return s;
  }
  double ss = 0.0;
  for (double x : samples) ss += (x - s.mean) * (x - s.mean);
  s.variance = ss / (n - 1.0);
  const double half_width = student_t_critical(n - 1.0, 0.025) * std::sqrt(s.variance / n);
  s.ci_low = s.mean - half_width;
  s.ci_high = s.mean + half_width;
  return s;
}

EmpiricalCdf::EmpiricalCdf(std::span<const double> samples) : sorted_(samples.begin(), samples.end()) {
  if (sorted_.empty()) throw std::invalid_argument("EmpiricalCdf: no samples");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::quantile(double p) const {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("EmpiricalCdf::quantile: p must be in (0, 1]");
  const double n = static_cast<double>(sorted_.size());
  auto k = static_cast<std::size_t>(std::ceil(p * n - 1e-12));
  k = std::clamp<std::size_t>(k, 1, sorted_.size());
  return sorted_[k - 1];
}

TTest t_statistic_from_moments(double mean_a, double var_a, std::size_t n_a, double mean_b, double var_b,
                               std::size_t n_b, double alpha) {
  if (n_a < 2 || n_b < 2) throw std::invalid_argument("t_statistic: at least two samples per group required");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("t_statistic: alpha must be in (0, 1)");
  TTest r;
  const double se = n_a == n_b ? std::sqrt((var_a + var_b) / static_cast<double>(n_b))
                               : std::sqrt(var_a / static_cast<double>(n_a) + var_b / static_cast<double>(n_b));
  const double diff = mean_a - mean_b;
  r.t = diff == 0.0 ? 0.0 : diff / se;
  r.df = n_a + n_b - 2;
  r.critical = student_t_critical(static_cast<double>(r.df), alpha / 2.0);
  r.reject = std::abs(r.t) > r.critical;
  return r;
}

TTest t_statistic(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size()) throw std::invalid_argument("t_statistic: groups must have equal sample counts");
  const auto sa = cohort_stats(a);
  const auto sb = cohort_stats(b);
  return t_statistic_from_moments(sa.mean, sa.variance, a.size(), sb.mean, sb.variance, b.size(), alpha);
}

}  // namespace morpho
