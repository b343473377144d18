#include "mrpsim/kpi.hpp"

#include <cmath>
#include <string>

#include "mrpsim/stats.hpp"

namespace mrpsim {

PeriodCost accrue(const PeriodSnapshot& s, const CostRates& rates) {
  return {static_cast<double>(s.wip_pieces) * rates.wip, static_cast<double>(s.fgi_pieces) * rates.fgi,
          static_cast<double>(s.backorder_pieces) * rates.backorder};
}

void KpiRecorder::record_snapshot(const PeriodSnapshot& snapshot) { snapshots_.push_back(snapshot); }
void KpiRecorder::record_demand(Period due, bool on_time) { demands_.emplace_back(due, on_time); }
void KpiRecorder::record_final_release(Period period) { releases_.push_back(period); }
void KpiRecorder::record_final_completion(Period period, double leadtime_periods) {
  leadtimes_.emplace_back(period, leadtime_periods);
}

RunSummary KpiRecorder::summarize(Period warmup, Period run_length) const {
  if (static_cast<Period>(snapshots_.size()) < run_length)
    throw ConfigError("incomplete run: " + std::to_string(snapshots_.size()) + " of " + std::to_string(run_length) +
                      " periods recorded");
  auto measured = [&](Period p) { return p > warmup && p <= run_length; };

  RunSummary s;
  for (const auto& snap : snapshots_) {
    if (!measured(snap.period)) continue;
    const auto c = accrue(snap, rates_);
    s.wip_cost += c.wip;
    s.fgi_cost += c.fgi;
    s.backorder_cost += c.backorder;
    ++s.measured_periods;
  }
  if (s.measured_periods > 0) {
    const double n = s.measured_periods;
    s.wip_cost /= n;
    s.fgi_cost /= n;
    s.backorder_cost /= n;
  }
  s.overall_cost = s.wip_cost + s.fgi_cost + s.backorder_cost;

  long on_time = 0;
  for (const auto& [due, ok] : demands_) {
    if (!measured(due)) continue;
    ++s.measured_demands;
    on_time += ok ? 1 : 0;
  }
  s.service_level = s.measured_demands > 0 ? static_cast<double>(on_time) / static_cast<double>(s.measured_demands) : 1.0;

  for (Period p : releases_)
    if (measured(p)) ++s.n_final_orders;

  std::vector<double> lts;
  for (const auto& [p, lt] : leadtimes_)
    if (measured(p)) lts.push_back(lt);
  s.leadtime_mean = stats::mean(lts);
  s.leadtime_sd = stats::sample_sd(lts);
  return s;
}

}  // namespace mrpsim
