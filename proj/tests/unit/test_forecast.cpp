#include <cmath>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "mrpsim/forecast.hpp"
#include "oracles.hpp"

using namespace mrpsim;

namespace {

ScenarioParams example_scenario(const oracle::ForecastExample& s) {
  if (s.beta == 0) return make_scenario(0.04, 0, BiasKind::Unbiased);
  return make_scenario(0.04, 1, s.permanent_under ? BiasKind::PermUnder : BiasKind::TempOver);
}

}  // namespace

TEST_CASE("bias schedules") {
  const auto over = BiasSchedule::make(BiasKind::TempOver);
  CHECK(over.at(10) == 0);
  CHECK(over.at(8) == 0.04);
  CHECK(over.at(6) == 0.08);
  CHECK(over.at(3) == -0.08);
  CHECK(over.at(1) == -0.04);
  CHECK(over.at(0) == 0);
  CHECK(over.at(11) == 0);
  CHECK(over.sum() == doctest::Approx(0.0));
  const auto under = BiasSchedule::make(BiasKind::TempUnder);
  for (int j = 1; j <= 10; ++j) CHECK(under.at(j) == -over.at(j));
  CHECK(BiasSchedule::make(BiasKind::PermUnder).sum() == doctest::Approx(0.4));
}

TEST_CASE("long-term forecast") {
  CHECK(long_term_forecast(make_scenario(0.04, 1, BiasKind::PermUnder)) == 480);
  CHECK(long_term_forecast(make_scenario(0.04, 1, BiasKind::PermOver)) == 1120);
  CHECK(long_term_forecast(make_scenario(0.04, 0, BiasKind::Unbiased)) == 800);
  CHECK(long_term_forecast(make_scenario(0.04, 1, BiasKind::TempOver)) == 800);
}

TEST_CASE("update moments follow alpha and beta") {
  const auto s = make_scenario(0.04, 1, BiasKind::PermUnder);
  CHECK(s.update_std() == doctest::Approx(32));
  CHECK(s.update_mean(5) == doctest::Approx(32));
  CHECK(s.update_mean(11) == 0);
  CHECK_THROWS_AS(make_scenario(-0.1, 0, BiasKind::Unbiased), ConfigError);
  CHECK_THROWS_AS(make_scenario(0.1, 2, BiasKind::Unbiased), ConfigError);
}

TEST_CASE("sample_update edge cases") {
  Rng rng(7);
  CHECK(sample_update(20, -32, 32, rng) == 0);
  CHECK(sample_update(800, 0, 0, rng) == 0);
  const auto b = update_bounds(800, 32);
  CHECK(b.lo == -800);
  CHECK(b.hi == 864);
  // symmetric about the mean
  CHECK(b.hi - 32 == doctest::Approx(32 - b.lo));
}

TEST_CASE("sample_update stays in bounds with the target mean") {
  Rng rng(11);
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto e = sample_update(800, 32, 32, rng);
    REQUIRE(e >= -800);
    REQUIRE(e <= 864);
    sum += static_cast<double>(e);
  }
  CHECK(std::abs(sum / n - 32) < 1.0);
}

TEST_CASE("heavily truncated updates match the truncated-normal mean") {
  // prev 40, mean 0, std 64: bounds [-40, 40] cut deep into both tails.
  Rng rng(3);
  const int n = 100000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const auto e = static_cast<double>(sample_update(40, 0, 64, rng));
    REQUIRE(std::abs(e) <= 40);
    sum += e;
    sq += e * e;
  }
  const auto m = oracle::truncated_normal(0, 64, -40, 40);
  CHECK(std::abs(sum / n - m.mean) < 0.3);
  // rounding to whole pieces adds about 1/12 to the variance
  CHECK(std::sqrt(sq / n - (sum / n) * (sum / n)) == doctest::Approx(std::sqrt(m.sd * m.sd + 1.0 / 12)).epsilon(0.01));
}

TEST_CASE("replaying the published forecast example reproduces every value") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  const ItemId product{13};
  REQUIRE(sys.demand().is_due(product, 40));
  for (const auto& sc : oracle::kForecastExamples) {
    CAPTURE(sc.name);
    ReplayTable replay;
    for (int j = 0; j <= 11; ++j) replay[{product.value, 40, j}] = sc.epsilon[static_cast<std::size_t>(11 - j)];
    ForecastBook book(sys, example_scenario(sc), 1);
    book.set_replay(replay);
    for (Period t = 29; t <= 40; ++t) {
      book.step(t);
      CHECK(book.forecast(product, 40, t) == sc.value[static_cast<std::size_t>(t - 29)]);
    }
    REQUIRE(book.stream(product, 40) != nullptr);
    CHECK(book.stream(product, 40)->current_value == 739);
    CHECK(book.stream(product, 40)->cumulative_value() == 739);
  }
}

TEST_CASE("forecast beyond the horizon is the long-term value") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  ForecastBook book(sys, make_scenario(0.04, 0, BiasKind::Unbiased), 5);
  book.step(1);
  CHECK(book.forecast(ItemId{10}, 13, 1) == 800);  // 12 periods ahead
  const auto g = book.gross_requirements(ItemId{10}, 1, 5);
  CHECK(g == std::vector<Pieces>(5, 0));  // no due dates yet
}

TEST_CASE("gross requirements carry applied updates") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  ForecastBook book(sys, make_scenario(0.04, 0, BiasKind::Unbiased), 5);
  ReplayTable replay;
  for (int j = 10; j >= 5; --j) replay[{10, 21, j}] = 0;
  replay[{10, 21, 8}] = 24;
  replay[{10, 21, 5}] = 32;
  book.set_replay(replay);
  for (Period t = 11; t <= 17; ++t) book.step(t);
  const auto g = book.gross_requirements(ItemId{10}, 17, 8);
  CHECK(g[4] == 856);  // due 21 = t + 4
  CHECK(g[0] == 800);  // due 17, nothing injected
  CHECK(g[1] == 0);
}

TEST_CASE("streams are independent of generation order") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  ForecastBook a(sys, make_scenario(0.08, 0, BiasKind::Unbiased), 42);
  ForecastBook b(sys, make_scenario(0.08, 0, BiasKind::Unbiased), 42);
  for (Period t = 1; t <= 60; ++t) a.step(t);
  // b skips straight to the window of due date 61
  for (Period t = 51; t <= 60; ++t) b.step(t);
  for (ItemId k : sys.final_products())
    for (Period i = 61; i <= 70; ++i)
      if (sys.demand().is_due(k, i)) CHECK(a.forecast(k, i, 60) == b.forecast(k, i, 60));
}

TEST_CASE("stream dump round trip drives a replay") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  ForecastBook a(sys, make_scenario(0.1, 1, BiasKind::PermOver), 9);
  a.set_recording(true);
  for (Period t = 1; t <= 40; ++t) a.step(t);
  const auto path = std::filesystem::temp_directory_path() / "mrpsim_stream_dump.csv";
  write_stream_dump(a.records(), path);
  const auto back = read_stream_dump(path);
  CHECK(back == a.records());

  ForecastBook b(sys, make_scenario(0.1, 1, BiasKind::PermOver), 12345);
  b.set_replay(to_replay_table(back));
  b.set_recording(true);
  for (Period t = 1; t <= 40; ++t) b.step(t);
  CHECK(b.records() == a.records());
  std::filesystem::remove(path);
}

TEST_CASE("forecast values never go negative") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  for (auto kind : {BiasKind::PermOver, BiasKind::TempUnder, BiasKind::Unbiased}) {
    ForecastBook book(sys, make_scenario(0.12, kind == BiasKind::Unbiased ? 0 : 1, kind), 77);
    book.set_recording(true);
    for (Period t = 1; t <= 200; ++t) book.step(t);
    for (const auto& r : book.records()) REQUIRE(r.value >= 0);
  }
}
