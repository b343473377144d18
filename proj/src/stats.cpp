#include "mrpsim/stats.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace mrpsim::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

namespace {

double two_sided_p(double t, double df) {
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test needs at least two values per sample");
  const double ma = mean(a), mb = mean(b);
  const double va = std::pow(sample_sd(a), 2) / static_cast<double>(a.size());
  const double vb = std::pow(sample_sd(b), 2) / static_cast<double>(b.size());
  const double se2 = va + vb;
  if (se2 == 0.0) {
    if (ma == mb) return {0.0, static_cast<double>(a.size() + b.size() - 2), 1.0};
    return {ma > mb ? INFINITY : -INFINITY, static_cast<double>(a.size() + b.size() - 2), 0.0};
  }
  const double t = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 /
                    (va * va / static_cast<double>(a.size() - 1) + vb * vb / static_cast<double>(b.size() - 1));
  return {t, df, two_sided_p(t, df)};
}

TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("paired_t_test needs equal-length samples");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const double md = mean(d);
  const double sd = sample_sd(d);
  const double df = static_cast<double>(d.size() - 1);
  if (sd == 0.0) {
    if (md == 0.0) return {0.0, df, 1.0};
    return {md > 0 ? INFINITY : -INFINITY, df, 0.0};
  }
  const double t = md / (sd / std::sqrt(static_cast<double>(d.size())));
  return {t, df, two_sided_p(t, df)};
}

Interval mean_confidence_interval(std::span<const double> xs, double level) {
  const double m = mean(xs);
  if (xs.size() < 2) return {m, m};
  boost::math::students_t dist(static_cast<double>(xs.size() - 1));
  const double q = boost::math::quantile(boost::math::complement(dist, (1.0 - level) / 2.0));
  const double half = q * sample_sd(xs) / std::sqrt(static_cast<double>(xs.size()));
  return {m - half, m + half};
}

}  // namespace mrpsim::stats
