#include "doctest.h"
#include "mrpsim/kpi.hpp"

using namespace mrpsim;

TEST_CASE("period cost accrual") {
  PeriodSnapshot s{1, 200, 100, 50};
  const auto c = accrue(s, CostRates{});
  CHECK(c.wip == 100);
  CHECK(c.fgi == 100);
  CHECK(c.backorder == 950);
  CHECK(c.total() == 1150);
  CHECK(accrue(PeriodSnapshot{}, CostRates{}).total() == 0);
}

TEST_CASE("summary excludes the warm-up") {
  KpiRecorder k(CostRates{});
  for (Period t = 1; t <= 10; ++t) k.record_snapshot({t, t <= 4 ? 10000 : 200, 100, 0});
  for (Period t = 1; t <= 20; ++t) k.record_demand(t <= 10 ? t : 10, !(t == 7 || t == 8));
  k.record_final_release(2);
  k.record_final_release(6);
  k.record_final_completion(3, 9.0);
  k.record_final_completion(8, 2.0);
  k.record_final_completion(9, 4.0);
  const auto s = k.summarize(4, 10);
  CHECK(s.measured_periods == 6);
  CHECK(s.overall_cost == doctest::Approx(200));
  CHECK(s.wip_cost == doctest::Approx(100));
  CHECK(s.n_final_orders == 1);
  CHECK(s.leadtime_mean == doctest::Approx(3.0));
  // demands due 5..10 plus ten more due 10: 16 measured, 2 late
  CHECK(s.measured_demands == 16);
  CHECK(s.service_level == doctest::Approx(14.0 / 16));
}

TEST_CASE("service level counts on-time demands") {
  KpiRecorder k(CostRates{});
  for (Period t = 1; t <= 20; ++t) k.record_snapshot({t, 0, 0, 0});
  for (int i = 0; i < 20; ++i) k.record_demand(1 + i, i >= 2);
  CHECK(k.summarize(0, 20).service_level == doctest::Approx(0.90));
}

TEST_CASE("incomplete runs cannot be summarized") {
  KpiRecorder k(CostRates{});
  k.record_snapshot({1, 0, 0, 0});
  CHECK_THROWS_AS(k.summarize(0, 5), ConfigError);
}
