#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrpsim/forecast.hpp"
#include "mrpsim/kpi.hpp"
#include "mrpsim/mrp.hpp"
#include "mrpsim/simulation.hpp"
#include "mrpsim/system.hpp"

namespace mrpsim {

/// One forecast scenario at one utilization level.
struct Instance {
  double alpha = 0;
  int beta = 0;
  BiasKind bias = BiasKind::Unbiased;
  UtilizationLevel utilization = UtilizationLevel::Low;

  /// e.g. "low-unbiased-b0-a0.02"
  std::string id() const;
  ScenarioParams scenario() const { return make_scenario(alpha, beta, bias); }
  void validate() const;
  auto operator<=>(const Instance&) const = default;
};

inline const std::vector<double> kAlphaLevels{0, 0.02, 0.04, 0.06, 0.08, 0.10, 0.12};

std::vector<Instance> unbiased_instances(const std::vector<double>& alphas,
                                         const std::vector<UtilizationLevel>& levels);
/// beta = 1 with every non-trivial bias schedule.
std::vector<Instance> biased_instances(const std::vector<double>& alphas, const std::vector<UtilizationLevel>& levels,
                                       const std::vector<BiasKind>& kinds = {BiasKind::TempOver, BiasKind::TempUnder,
                                                                             BiasKind::PermOver, BiasKind::PermUnder});

struct GridSpec {
  std::string name = "custom";
  std::vector<Instance> instances;
  std::vector<double> ssts{0, 0.2, 0.4, 0.6, 0.8, 1, 1.5, 2};
  std::vector<int> plts{1, 2, 3, 4, 6, 8};
  std::vector<int> fops{1, 2, 5, 6, 9};
  std::vector<int> foqs{200, 400, 800, 1200, 1600};
  std::vector<Pieces> comp_lots{800, 1600};
  std::vector<MrpMode> modes{MrpMode::Standard, MrpMode::Extended};
  int replications = 20;
  Period run_length = 400;
  Period warmup = 40;
  ModelOptions model;

  std::size_t params_per_instance() const;
  std::size_t cell_count() const;
  /// Throws ConfigError on empty or off-grid sets.
  void validate() const;
  std::vector<PlanningParams> parameter_sets(MrpMode mode) const;

  /// 105 instances × 960 parameter sets × 2 modes × 20 replications.
  static GridSpec full();
  /// Low utilization, unbiased, α ∈ {0.02, 0.06, 0.10}, reduced grid, 10 replications.
  static GridSpec desk();
  /// Low utilization, α = 0.06, permanent over- and underbooking, reduced grid.
  static GridSpec bias();
  /// α = 0, low utilization, FOP 1 and FOQ 800, standard mode, 20 replications.
  static GridSpec null_scenario();
  static GridSpec preset(std::string_view name);
};

inline constexpr std::string_view kPresetNames = "desk, bias, null, full";

struct Cell {
  std::size_t index = 0;
  Instance instance;
  PlanningParams params;
  int replication = 0;
};

/// All cells in a fixed order: instance, mode, SST, PLT, policy, component
/// lot, replication.
std::vector<Cell> enumerate(const GridSpec& grid);

struct ResultRow {
  Instance instance;
  MrpMode mode = MrpMode::Standard;
  double sst_factor = 0;
  int plt = 1;
  LotPolicy policy;
  Pieces comp_lot = 800;
  int replication = 0;
  std::uint64_t seed = 0;
  double overall_cost = 0;
  double wip_cost = 0;
  double fgi_cost = 0;
  double backorder_cost = 0;
  double service_level = 0;
  long n_final_orders = 0;
  double leadtime_mean = 0;
  double leadtime_sd = 0;

  PlanningParams params() const;
  /// Unique key: instance, params, mode, replication.
  std::string key() const;
  bool operator==(const ResultRow&) const = default;
};

/// Replication seed; forecast and setup substreams are keyed below it by
/// product/due date and machine only, so every parameter set and mode of a
/// replication sees the same demand and setup-time draws.
std::uint64_t replication_seed(std::uint64_t base_seed, int replication);

/// Default systems per utilization level, shared read-only between workers.
class SystemCache {
 public:
  explicit SystemCache(SystemConstants constants = {});
  std::shared_ptr<const ProductionSystem> get(UtilizationLevel level) const;
  const SystemConstants& constants() const { return constants_; }

 private:
  SystemConstants constants_;
  std::map<UtilizationLevel, std::shared_ptr<const ProductionSystem>> systems_;
};

/// Runs one cell. Errors are rethrown as std::runtime_error prefixed with the cell identity.
ResultRow run_cell(const Cell& cell, const SystemCache& systems, std::uint64_t base_seed, Period run_length = 400,
                   Period warmup = 40, const ModelOptions& model = {});

struct CellFailure {
  std::size_t index = 0;
  std::string message;
};

struct GridOutcome {
  std::vector<ResultRow> rows;  // cell order; failed cells omitted
  std::vector<CellFailure> failures;
};

/// Runs cells on `workers` threads. Output is identical for any worker count.
/// `progress` (if set) is called with the number of finished cells; calls are serialized.
GridOutcome run_grid(const std::vector<Cell>& cells, const SystemCache& systems, std::uint64_t base_seed,
                     Period run_length, Period warmup, unsigned workers,
                     const std::function<void(std::size_t)>& progress = {}, const ModelOptions& model = {});

const std::vector<std::string>& result_columns();
void write_results(std::ostream& out, const std::vector<ResultRow>& rows, bool header = true);
std::vector<ResultRow> read_results(std::istream& in, const std::string& source = "<stream>");
std::vector<ResultRow> read_results(const std::filesystem::path& path);
/// Writes rows to `path`. With append, existing rows are kept and new rows
/// with an existing key are dropped if identical and rejected otherwise.
void write_results(const std::filesystem::path& path, const std::vector<ResultRow>& rows, bool append = false);

/// Best parameter set of one (instance, mode) by mean overall cost.
struct BestCell {
  Instance instance;
  MrpMode mode = MrpMode::Standard;
  PlanningParams params;
  std::vector<int> replications;
  std::vector<double> costs;  // overall cost per replication, replication order
  double mean_cost = 0;
  double mean_wip = 0;
  double mean_fgi = 0;
  double mean_backorder = 0;
  double mean_service = 0;
  double mean_orders = 0;
  double mean_leadtime = 0;
  double mean_leadtime_sd = 0;
  std::size_t candidates = 0;
};

/// Arg-min of mean overall cost per (instance, mode). Ties go to smaller SST,
/// then smaller PLT, then policy order (FOP before FOQ, smaller parameter),
/// then smaller component lot. Throws if any parameter set misses a
/// replication present for another set of the same (instance, mode).
std::vector<BestCell> best_per_instance(const std::vector<ResultRow>& rows);

enum class Significance { None, Five, One };
std::string_view stars(Significance s);

struct Comparison {
  Instance instance;
  BestCell standard;
  BestCell extended;
  double cost_reduction = 0;  // (extended - standard) / standard; negative = extended cheaper
  double p_value = 1;
  Significance significance = Significance::None;
};

/// Welch's t-test on the two best cells' cost samples, or a paired t-test on
/// per-replication differences when `paired`.
Comparison compare(const BestCell& standard, const BestCell& extended, bool paired = false);
/// Comparisons for every instance with both modes present.
std::vector<Comparison> analyze(const std::vector<ResultRow>& rows, bool paired = false);

struct Table {
  std::string name;
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_text() const;
  std::string to_csv() const;
};

/// Optimal-parameter tables per mode (unbiased), cost comparison with stars
/// (unbiased), biased optima with over/under columns, and biased comparisons.
std::vector<Table> render_tables(const std::vector<ResultRow>& rows, bool paired = false);

struct Manifest {
  std::string grid;
  std::uint64_t base_seed = 0;
  std::size_t cells = 0;
  std::size_t failures = 0;
  unsigned workers = 1;
  std::string config_hash;
  ModelOptions model;
};

/// Stable FNV-1a digest of every system constant.
std::string config_hash(const SystemConstants& constants);
std::string_view code_version();
void write_manifest(const std::filesystem::path& path, const Manifest& m);

}  // namespace mrpsim
