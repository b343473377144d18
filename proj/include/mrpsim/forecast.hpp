#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mrpsim/rng.hpp"
#include "mrpsim/system.hpp"
#include "mrpsim/types.hpp"

namespace mrpsim {

enum class BiasKind { Unbiased, TempOver, TempUnder, PermOver, PermUnder };

std::string_view to_string(BiasKind kind);
BiasKind parse_bias(std::string_view text);

inline constexpr int kForecastHorizon = 10;

/// Per-update bias fractions b_j for j = 1..10 periods before delivery.
struct BiasSchedule {
  BiasKind kind = BiasKind::Unbiased;
  std::array<double, kForecastHorizon> b{};  // b[j - 1]

  static BiasSchedule make(BiasKind kind);
  double at(int j) const { return (j >= 1 && j <= kForecastHorizon) ? b[static_cast<std::size_t>(j - 1)] : 0.0; }
  bool permanent() const { return kind == BiasKind::PermOver || kind == BiasKind::PermUnder; }
  double sum() const;
};

struct ScenarioParams {
  double alpha = 0.0;
  int beta = 0;
  BiasSchedule bias;
  int horizon = kForecastHorizon;
  Pieces expected_final_demand = 800;

  /// E[eps_j] = beta * b_j * E[D_0].
  double update_mean(int j) const;
  /// sigma[eps_j] = alpha * E[D_0].
  double update_std() const;
  void validate() const;
};

ScenarioParams make_scenario(double alpha, int beta, BiasKind bias, Pieces expected_final_demand = 800);

/// Long-term forecast x_k: E[D_0] for unbiased/temporary schedules, shifted by
/// the cumulated permanent bias so that the final order keeps mean E[D_0].
Pieces long_term_forecast(const ScenarioParams& scenario);

struct UpdateBounds {
  double lo;
  double hi;
};

/// Truncation interval [-prev, prev + 2·mean], symmetric about the mean.
UpdateBounds update_bounds(Pieces prev_value, double mean);

/// Draws one forecast update: Normal(mean, std) truncated to update_bounds,
/// rounded to whole pieces. Returns 0 when mean < 0 and prev <= -mean.
Pieces sample_update(Pieces prev_value, double mean, double std, Rng& rng);

/// Forecast for one (product, due date) pair.
struct ForecastStream {
  ItemId product;
  Period due_date = 0;
  Pieces long_term = 0;
  Pieces current_value = 0;
  /// updates[j] = eps applied j periods before delivery, for j = 0..H.
  std::vector<std::optional<Pieces>> updates;

  ForecastStream(ItemId product, Period due, Pieces long_term, int horizon);

  /// x + sum of applied updates; equals current_value by construction.
  Pieces cumulative_value() const;
};

/// Applies a fixed eps at j periods before delivery (replay path).
void apply_update(ForecastStream& stream, int j, Pieces epsilon);

/// Samples and applies eps for j periods before delivery. j == 0 applies 0,
/// j > H is a no-op.
void advance(ForecastStream& stream, int j, const ScenarioParams& scenario, Rng& rng);

struct UpdateRecord {
  ItemId product;
  Period due_date = 0;
  int j = 0;
  Pieces epsilon = 0;
  Pieces value = 0;
  bool operator==(const UpdateRecord&) const = default;
};

/// (product, due date, j) -> eps, injected in place of sampling.
using ReplayTable = std::map<std::tuple<int, Period, int>, Pieces>;

void write_stream_dump(const std::vector<UpdateRecord>& records, const std::filesystem::path& path);
std::vector<UpdateRecord> read_stream_dump(const std::filesystem::path& path);
ReplayTable to_replay_table(const std::vector<UpdateRecord>& records);

/// All forecast streams of one run. Each (product, due date) stream draws from
/// its own RNG substream keyed by (seed, product, due date), so realizations
/// do not depend on which other streams exist or on generation order.
class ForecastBook {
 public:
  ForecastBook(const ProductionSystem& system, ScenarioParams scenario, std::uint64_t seed);

  void set_replay(ReplayTable table) { replay_ = std::move(table); }
  void set_recording(bool on) { recording_ = on; }

  /// Opens streams whose due date entered the horizon and applies the update
  /// j = due - t to every open stream with due >= t. Streams with due < t are
  /// dropped.
  void step(Period t);

  /// D_{k,i,i-t}: stream value if open, the long-term forecast when i - t > H.
  Pieces forecast(ItemId product, Period due, Period now) const;

  /// Gross requirements for periods now..now+horizon-1 (index 0 = now).
  std::vector<Pieces> gross_requirements(ItemId product, Period now, int horizon) const;

  const ForecastStream* stream(ItemId product, Period due) const;
  const std::vector<UpdateRecord>& records() const { return records_; }
  const ScenarioParams& scenario() const { return scenario_; }
  Pieces long_term() const { return long_term_; }

 private:
  struct Open {
    ForecastStream stream;
    Rng rng;
  };

  DemandPattern demand_;
  std::vector<ItemId> products_;
  ScenarioParams scenario_;
  std::uint64_t seed_;
  Pieces long_term_;
  std::map<std::pair<int, Period>, Open> open_;
  std::optional<ReplayTable> replay_;
  bool recording_ = false;
  std::vector<UpdateRecord> records_;
};

}  // namespace mrpsim
