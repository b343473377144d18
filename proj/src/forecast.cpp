#include "mrpsim/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "csv.hpp"

namespace mrpsim {

std::string_view to_string(BiasKind kind) {
  switch (kind) {
    case BiasKind::Unbiased: return "unbiased";
    case BiasKind::TempOver: return "temp_over";
    case BiasKind::TempUnder: return "temp_under";
    case BiasKind::PermOver: return "perm_over";
    case BiasKind::PermUnder: return "perm_under";
  }
  return "?";
}

BiasKind parse_bias(std::string_view text) {
  for (auto k : {BiasKind::Unbiased, BiasKind::TempOver, BiasKind::TempUnder, BiasKind::PermOver, BiasKind::PermUnder})
    if (to_string(k) == text) return k;
  throw ConfigError("unknown bias schedule '" + std::string(text) +
                    "' (allowed: unbiased, temp_over, temp_under, perm_over, perm_under)");
}

BiasSchedule BiasSchedule::make(BiasKind kind) {
  BiasSchedule s;
  s.kind = kind;
  // Listed as b_10 .. b_1.
  std::array<double, kForecastHorizon> from_ten{};
  switch (kind) {
    case BiasKind::Unbiased: break;
    case BiasKind::TempOver: from_ten = {0, 0, 0.04, 0.04, 0.08, 0, 0, -0.08, -0.04, -0.04}; break;
    case BiasKind::TempUnder: from_ten = {0, 0, -0.04, -0.04, -0.08, 0, 0, 0.08, 0.04, 0.04}; break;
    case BiasKind::PermOver: from_ten.fill(-0.04); break;
    case BiasKind::PermUnder: from_ten.fill(0.04); break;
  }
  for (std::size_t i = 0; i < from_ten.size(); ++i) s.b[kForecastHorizon - 1 - i] = from_ten[i];
  return s;
}

double BiasSchedule::sum() const { return std::accumulate(b.begin(), b.end(), 0.0); }

double ScenarioParams::update_mean(int j) const {
  return beta * bias.at(j) * static_cast<double>(expected_final_demand);
}

double ScenarioParams::update_std() const { return alpha * static_cast<double>(expected_final_demand); }

void ScenarioParams::validate() const {
  if (alpha < 0) throw ConfigError("alpha must be >= 0");
  if (beta != 0 && beta != 1) throw ConfigError("beta must be 0 or 1");
  if (horizon < 1 || horizon > kForecastHorizon) throw ConfigError("forecast horizon must be in 1..10");
  if (expected_final_demand <= 0) throw ConfigError("expected final demand must be > 0");
}

ScenarioParams make_scenario(double alpha, int beta, BiasKind bias, Pieces expected_final_demand) {
  ScenarioParams s;
  s.alpha = alpha;
  s.beta = beta;
  s.bias = BiasSchedule::make(bias);
  s.expected_final_demand = expected_final_demand;
  s.validate();
  return s;
}

Pieces long_term_forecast(const ScenarioParams& scenario) {
  const double base = static_cast<double>(scenario.expected_final_demand);
  if (!scenario.bias.permanent() || scenario.beta == 0) return scenario.expected_final_demand;
  double cumulated = 0;
  for (int j = 1; j <= scenario.horizon; ++j) cumulated += scenario.beta * scenario.bias.at(j);
  return std::llround(base * (1.0 - cumulated));
}

UpdateBounds update_bounds(Pieces prev_value, double mean) {
  const double prev = static_cast<double>(prev_value);
  return {-prev, prev + 2.0 * mean};
}

Pieces sample_update(Pieces prev_value, double mean, double std, Rng& rng) {
  if (mean < 0 && static_cast<double>(prev_value) <= -mean) return 0;
  const auto [lo, hi] = update_bounds(prev_value, mean);
  const auto lo_int = static_cast<Pieces>(std::ceil(lo));
  const auto hi_int = static_cast<Pieces>(std::floor(hi));
  auto to_pieces = [&](double x) { return std::clamp<Pieces>(std::llround(x), lo_int, hi_int); };

  if (std == 0.0) return to_pieces(std::clamp(mean, lo, hi));

  constexpr int kMaxAttempts = 10'000;
  std::normal_distribution<double> normal(mean, std);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double x = normal(rng);
    if (x >= lo && x <= hi) return to_pieces(x);
  }
  return to_pieces(std::clamp(mean, lo, hi));
}

ForecastStream::ForecastStream(ItemId product_, Period due, Pieces long_term_, int horizon)
    : product(product_), due_date(due), long_term(long_term_), current_value(long_term_),
      updates(static_cast<std::size_t>(horizon + 1)) {}

Pieces ForecastStream::cumulative_value() const {
  Pieces v = long_term;
  for (const auto& u : updates)
    if (u) v += *u;
  return v;
}

void apply_update(ForecastStream& stream, int j, Pieces epsilon) {
  if (j < 0 || j >= static_cast<int>(stream.updates.size())) return;
  if (j == 0) epsilon = 0;
  stream.updates[static_cast<std::size_t>(j)] = epsilon;
  stream.current_value += epsilon;
}

void advance(ForecastStream& stream, int j, const ScenarioParams& scenario, Rng& rng) {
  if (j > scenario.horizon || j < 0) return;
  if (j == 0) {
    apply_update(stream, 0, 0);
    return;
  }
  apply_update(stream, j, sample_update(stream.current_value, scenario.update_mean(j), scenario.update_std(), rng));
}

ForecastBook::ForecastBook(const ProductionSystem& system, ScenarioParams scenario, std::uint64_t seed)
    : demand_(system.demand()), products_(system.final_products()), scenario_(std::move(scenario)), seed_(seed),
      long_term_(long_term_forecast(scenario_)) {
  scenario_.validate();
}

void ForecastBook::step(Period t) {
  std::erase_if(open_, [t](const auto& kv) { return kv.first.second < t; });

  for (ItemId k : products_) {
    for (Period i = demand_.next_due_at_or_after(k, t); i <= t + scenario_.horizon; i += demand_.interval) {
      auto key = std::pair{k.value, i};
      auto it = open_.find(key);
      if (it == open_.end()) {
        Rng rng(derive_seed(seed_, {kForecastTag, static_cast<std::uint64_t>(k.value), static_cast<std::uint64_t>(i)}));
        it = open_.emplace(key, Open{ForecastStream(k, i, long_term_, scenario_.horizon), std::move(rng)}).first;
      }
      auto& [stream, rng] = it->second;
      const int j = i - t;
      if (replay_) {
        auto r = replay_->find({k.value, i, j});
        apply_update(stream, j, r == replay_->end() ? 0 : r->second);
      } else {
        advance(stream, j, scenario_, rng);
      }
      if (recording_)
        records_.push_back({k, i, j, *stream.updates[static_cast<std::size_t>(j)], stream.current_value});
    }
  }
}

Pieces ForecastBook::forecast(ItemId product, Period due, Period now) const {
  if (!demand_.is_due(product, due)) return 0;
  if (due - now > scenario_.horizon) return long_term_;
  auto it = open_.find({product.value, due});
  return it == open_.end() ? long_term_ : it->second.stream.current_value;
}

std::vector<Pieces> ForecastBook::gross_requirements(ItemId product, Period now, int horizon) const {
  std::vector<Pieces> g(static_cast<std::size_t>(std::max(horizon, 0)), 0);
  for (Period i = demand_.next_due_at_or_after(product, now); i < now + horizon; i += demand_.interval)
    g[static_cast<std::size_t>(i - now)] = forecast(product, i, now);
  return g;
}

const ForecastStream* ForecastBook::stream(ItemId product, Period due) const {
  auto it = open_.find({product.value, due});
  return it == open_.end() ? nullptr : &it->second.stream;
}

void write_stream_dump(const std::vector<UpdateRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "product,due_date,j,epsilon,value\n";
  for (const auto& r : records)
    out << r.product.value << ',' << r.due_date << ',' << r.j << ',' << r.epsilon << ',' << r.value << '\n';
}

std::vector<UpdateRecord> read_stream_dump(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  csv::Reader reader(in, path.string());
  reader.expect_header({"product", "due_date", "j", "epsilon", "value"});
  std::vector<UpdateRecord> out;
  while (auto row = reader.next()) {
    UpdateRecord r;
    r.product = ItemId{row->get_int(0)};
    r.due_date = row->get_int(1);
    r.j = row->get_int(2);
    r.epsilon = row->get_int64(3);
    r.value = row->get_int64(4);
    out.push_back(r);
  }
  return out;
}

ReplayTable to_replay_table(const std::vector<UpdateRecord>& records) {
  ReplayTable t;
  for (const auto& r : records) t[{r.product.value, r.due_date, r.j}] = r.epsilon;
  return t;
}

}  // namespace mrpsim
