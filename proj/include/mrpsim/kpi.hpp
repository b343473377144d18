#pragma once

#include <map>
#include <vector>

#include "mrpsim/system.hpp"
#include "mrpsim/types.hpp"

namespace mrpsim {

/// Stock positions at the end of a period, after fulfilment.
struct PeriodSnapshot {
  Period period = 0;
  Pieces wip_pieces = 0;        // released, not yet finished goods, plus component stock
  Pieces fgi_pieces = 0;        // final-product stock
  Pieces backorder_pieces = 0;  // unfilled demand due at or before this period
};

struct PeriodCost {
  double wip = 0;
  double fgi = 0;
  double backorder = 0;
  double total() const { return wip + fgi + backorder; }
};

PeriodCost accrue(const PeriodSnapshot& snapshot, const CostRates& rates);

/// Per-replication KPIs. Costs are averages per measured period.
struct RunSummary {
  double overall_cost = 0;
  double wip_cost = 0;
  double fgi_cost = 0;
  double backorder_cost = 0;
  double service_level = 0;
  long n_final_orders = 0;
  double leadtime_mean = 0;  // periods, final products
  double leadtime_sd = 0;
  std::map<MachineId, double> utilization;
  int measured_periods = 0;
  long measured_demands = 0;
};

/// Collects per-period snapshots and per-order/per-demand outcomes over a run.
/// Everything is recorded; the warm-up cut happens in summarize().
class KpiRecorder {
 public:
  explicit KpiRecorder(CostRates rates) : rates_(rates) {}

  void record_snapshot(const PeriodSnapshot& snapshot);
  void record_demand(Period due, bool on_time);
  void record_final_release(Period period);
  /// Lead time of a finished final-product lot, attributed to its completion period.
  void record_final_completion(Period period, double leadtime_periods);

  /// Summary over periods warmup+1..run_length. Throws if fewer than
  /// run_length snapshots were recorded.
  RunSummary summarize(Period warmup, Period run_length) const;

  const std::vector<PeriodSnapshot>& snapshots() const { return snapshots_; }
  const CostRates& rates() const { return rates_; }

 private:
  CostRates rates_;
  std::vector<PeriodSnapshot> snapshots_;
  std::vector<std::pair<Period, bool>> demands_;
  std::vector<Period> releases_;
  std::vector<std::pair<Period, double>> leadtimes_;
};

}  // namespace mrpsim
