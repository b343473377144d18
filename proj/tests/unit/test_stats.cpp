#include <cmath>
#include <vector>

#include "doctest.h"
#include "mrpsim/stats.hpp"

using namespace mrpsim;

// Reference values from scipy.stats (ttest_ind equal_var=False, ttest_rel, t.interval).

TEST_CASE("Welch t-test") {
  const std::vector<double> a{1, 2, 3, 4, 5}, b{2, 4.5, 3.5, 6, 5.5, 7};
  const auto r = stats::welch_t_test(a, b);
  CHECK(r.t == doctest::Approx(-1.711223787991986).epsilon(1e-10));
  CHECK(r.df == doctest::Approx(8.958931770996276).epsilon(1e-10));
  CHECK(r.p_value == doctest::Approx(0.1213549830598437).epsilon(1e-8));

  const std::vector<double> s{7830, 7900, 7750, 7810, 7880}, e{6149, 6200, 6100, 6180, 6120};
  const auto big = stats::welch_t_test(s, e);
  CHECK(big.t == doctest::Approx(52.07382952562454).epsilon(1e-10));
  CHECK(big.p_value == doctest::Approx(1.8239183351812287e-10).epsilon(1e-6));
}

TEST_CASE("paired t-test") {
  const std::vector<double> a{5.1, 4.9, 5.6, 5.8, 6.0}, b{4.8, 4.7, 5.0, 5.9, 5.2};
  const auto r = stats::paired_t_test(a, b);
  CHECK(r.t == doctest::Approx(2.295276167028016).epsilon(1e-10));
  CHECK(r.p_value == doctest::Approx(0.08337128911743699).epsilon(1e-8));
}

TEST_CASE("zero-variance samples") {
  const std::vector<double> a{3200, 3200, 3200}, b{3200, 3200, 3200}, c{3100, 3100, 3100};
  CHECK(stats::welch_t_test(a, b).p_value == 1.0);
  CHECK(stats::welch_t_test(a, c).p_value == 0.0);
  const auto ci = stats::mean_confidence_interval(a, 0.95);
  CHECK(ci.lo == 3200);
  CHECK(ci.hi == 3200);
}

TEST_CASE("confidence interval") {
  const std::vector<double> x{4158, 4100, 4220, 4190, 4130};
  const auto ci = stats::mean_confidence_interval(x, 0.95);
  CHECK(ci.lo == doctest::Approx(4100.6922354560365).epsilon(1e-10));
  CHECK(ci.hi == doctest::Approx(4218.507764543964).epsilon(1e-10));
  CHECK(ci.contains(4158));
  CHECK(ci.overlaps({4218, 5000}));
  CHECK_FALSE(ci.overlaps({4219, 5000}));
}

TEST_CASE("mean and sd") {
  const std::vector<double> x{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(stats::mean(x) == 5);
  CHECK(stats::sample_sd(x) == doctest::Approx(std::sqrt(32.0 / 7)));
  CHECK(stats::sample_sd(std::vector<double>{1}) == 0);
}
