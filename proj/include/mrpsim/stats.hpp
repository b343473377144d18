#pragma once

#include <span>

namespace mrpsim::stats {

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

struct TTestResult {
  double t = 0;
  double df = 0;
  double p_value = 1;  // two-sided
};

/// Welch's unequal-variance two-sample t-test. Zero-variance samples are
/// decided exactly: equal means give p = 1, different means p = 0.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

/// Paired t-test on a[i] - b[i].
TTestResult paired_t_test(std::span<const double> a, std::span<const double> b);

struct Interval {
  double lo = 0;
  double hi = 0;
  bool overlaps(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Two-sided Student-t confidence interval for the mean.
Interval mean_confidence_interval(std::span<const double> xs, double level);

}  // namespace mrpsim::stats
