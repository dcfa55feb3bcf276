#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace morpho {

/// Upper-tail Student-t critical value: P(T_df > t) = tail.
double student_t_critical(double df, double tail);

struct SampleStats {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // divisor n - 1
  double ci_low = 0.0;    // 95% confidence interval of the mean
  double ci_high = 0.0;
};

/// Mean, sample variance and the t-based 95% CI of the mean.
/// Throws std::invalid_argument for fewer than two samples.
SampleStats cohort_stats(std::span<const double> samples);

/// Right-continuous step function of the sorted samples.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::span<const double> samples);

  double operator()(double x) const;
  /// Smallest sample x with F(x) >= p, p in (0, 1].
  double quantile(double p) const;
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct TTest {
  double t = 0.0;
  double critical = 0.0;
  std::size_t df = 0;
  bool reject = false;
};

/// Two-sample statistic t = (mean_a - mean_b) / sqrt((s_a^2 + s_b^2) / n_b)
/// for equal group sizes, two-sided at level alpha with 2(n_b - 1) degrees
/// of freedom. Throws std::invalid_argument for n_b < 2 or unequal sizes.
TTest t_statistic(std::span<const double> a, std::span<const double> b, double alpha = 0.001);

/// Same statistic from moments. Unequal sizes use sqrt(s_a^2/n_a + s_b^2/n_b)
/// and n_a + n_b - 2 degrees of freedom, which reduces to the above.
TTest t_statistic_from_moments(double mean_a, double var_a, std::size_t n_a, double mean_b, double var_b,
                               std::size_t n_b, double alpha = 0.001);

}  // namespace morpho
