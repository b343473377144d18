#pragma once

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "mrpsim/forecast.hpp"
#include "mrpsim/inventory.hpp"
#include "mrpsim/kpi.hpp"
#include "mrpsim/mrp.hpp"
#include "mrpsim/shopfloor.hpp"
#include "mrpsim/system.hpp"

namespace mrpsim {

/// When the period's forecast updates arrive relative to planning.
enum class UpdateTiming {
  AfterRelease,  // MRP and release see forecasts as of the end of the previous period
  BeforeMrp,     // MRP already sees this period's updates
};

/// Where MRP expects the output of an open order.
enum class ReceiptProjection {
  Completion,  // projected completion; once overdue, now + planned lead time
  DueDate,     // due period; once overdue, now
};

std::string_view to_string(UpdateTiming timing);
std::string_view to_string(ReceiptProjection rule);
ReceiptProjection parse_receipt_projection(std::string_view text);
UpdateTiming parse_update_timing(std::string_view text);

/// Model conventions the published description leaves open.
struct ModelOptions {
  UpdateTiming update_timing = UpdateTiming::BeforeMrp;
  ReceiptProjection receipts = ReceiptProjection::DueDate;
  ComponentTiming component_timing = ComponentTiming::ParentDue;
};

struct RunConfig {
  std::shared_ptr<const ProductionSystem> system;
  ScenarioParams scenario;
  PlanningParams params;
  std::uint64_t seed = 1;
  Period run_length = 400;
  Period warmup = 40;
  int planning_horizon = kPlanningHorizon;
  ModelOptions model;

  std::optional<ReplayTable> replay;  // replaces sampled forecast updates
  bool record_forecasts = false;
  bool trace_mrp = false;
  bool trace_events = false;
  bool record_operations = false;
  std::ostream* log = nullptr;  // verbose per-period log

  void validate() const;
};

/// Per-period stock audit.
struct PeriodAudit {
  Period period = 0;
  bool conserved = true;          // initial + receipts - withdrawals == on_hand for every item
  Pieces min_on_hand = 0;
  Pieces component_withdrawals = 0;
  Pieces component_need_released = 0;  // Σ released product lots × BOM quantity
};

/// One replication. Each period runs, in order: forecast updates, firming of
/// demands due now, MRP, order release with blocked retries, shop floor
/// through the period, fulfilment, cost snapshot. With
/// UpdateTiming::AfterRelease the forecast updates move behind the release.
class Simulation {
 public:
  explicit Simulation(RunConfig config);
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void step_period();
  /// Steps to the configured run length and summarizes.
  RunSummary run();
  RunSummary summary() const;

  Period period() const { return period_; }
  const RunConfig& config() const { return config_; }
  const StockLedger& ledger() const { return ledger_; }
  const std::vector<ProductionOrder>& orders() const { return orders_; }
  const std::vector<CustomerDemand>& demands() const { return demands_; }
  const KpiRecorder& kpi() const { return kpi_; }
  const ForecastBook& forecasts() const { return book_; }
  const ShopFloor& shop() const { return shop_; }
  const std::vector<PeriodAudit>& audits() const { return audits_; }
  const std::vector<MrpTraceRow>& mrp_trace() const { return mrp_trace_; }
  Period delta(ItemId product) const;
  /// Planned lots of the most recent MRP run.
  const MrpResult& last_mrp() const { return last_mrp_; }

 private:
  std::vector<MrpItemState> product_states(Period t) const;
  std::vector<MrpItemState> component_states() const;
  void dispatch(ProductionOrder& order);
  void on_complete(OrderId id, Minutes started, Minutes finished);
  PeriodSnapshot snapshot(Period t) const;
  void audit(Period t);

  RunConfig config_;
  const ProductionSystem& system_;
  ForecastBook book_;
  ShopFloor shop_;
  StockLedger ledger_;
  KpiRecorder kpi_;
  std::vector<ProductionOrder> orders_;
  std::vector<OrderId> open_orders_;
  std::vector<CustomerDemand> demands_;
  std::map<ItemId, Period> delta_;
  std::vector<PeriodAudit> audits_;
  std::vector<MrpTraceRow> mrp_trace_;
  MrpResult last_mrp_;
  Pieces component_need_released_ = 0;
  Period period_ = 0;
};

RunSummary run(const RunConfig& config);

}  // namespace mrpsim
