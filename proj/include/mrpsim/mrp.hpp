#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrpsim/system.hpp"
#include "mrpsim/types.hpp"

namespace mrpsim {

enum class MrpMode { Standard, Extended };

std::string_view to_string(MrpMode mode);
MrpMode parse_mode(std::string_view text);

enum class LotPolicyKind { FOP, FOQ };

struct LotPolicy {
  LotPolicyKind kind = LotPolicyKind::FOP;
  int param = 1;  // periods for FOP, pieces for FOQ

  static LotPolicy fop(int periods) { return {LotPolicyKind::FOP, periods}; }
  static LotPolicy foq(int quantity) { return {LotPolicyKind::FOQ, quantity}; }
  /// "FOP:1", "FOQ:200".
  static LotPolicy parse(std::string_view text);
  std::string to_string() const;
  std::string_view kind_name() const { return kind == LotPolicyKind::FOP ? "FOP" : "FOQ"; }
  auto operator<=>(const LotPolicy&) const = default;
};

/// One cell of the planning-parameter grid.
struct PlanningParams {
  double sst_factor = 0.0;  // safety stock = sst_factor × expected order amount (final products)
  int plt = 1;              // planned lead time of final products, periods
  LotPolicy policy = LotPolicy::fop(1);
  Pieces component_lot = 800;  // FOQ quantity for components
  int component_plt = 3;
  MrpMode mode = MrpMode::Standard;

  /// Throws ConfigError naming the allowed set when a value is off-grid.
  void validate() const;
  Pieces safety_stock(Pieces expected_order_amount) const;
};

/// Planning horizon used by the simulation; must cover H + plt + FOP window + component plt.
inline constexpr int kPlanningHorizon = 30;
void check_horizon(const PlanningParams& params, int forecast_horizon, int planning_horizon);

// Netting. y_prev is the projected on-hand of the previous period, g the gross
// requirement, r the receipts, s the safety stock.
Pieces net_requirements_standard(Pieces y_prev, Pieces g, Pieces r, Pieces s);
/// Inside the covered region (t <= delta) only a drop below zero triggers a
/// requirement; outside it behaves exactly like standard netting.
Pieces net_requirements_extended(Pieces y_prev, Pieces g, Pieces r, Pieces s, Period t, Period delta);

struct PlannedLot {
  ItemId item;
  Pieces quantity = 0;
  Period due = 0;
  Period planned_start = 0;
  Period projected_completion = 0;
  Period covered_first = 0;
  Period covered_last = 0;
  bool operator==(const PlannedLot&) const = default;
};

/// Fixed order period: the first period with a positive requirement anchors a
/// lot covering the next P periods' requirements. `first_period` is the
/// period of net[0]. Each lot's covered interval extends to the period before
/// the next lot (same for FOQ).
std::vector<PlannedLot> lot_size_fop(std::span<const Pieces> net, int periods, Period first_period = 0);

/// Fixed order quantity: every residual requirement is rounded up to a multiple
/// of Q; the surplus is carried forward against later requirements.
std::vector<PlannedLot> lot_size_foq(std::span<const Pieces> net, Pieces quantity, Period first_period = 0);

/// planned_start = due - plt, clipped to `now`; clipped lots complete at now + plt.
void backward_schedule(std::span<PlannedLot> lots, int plt, Period now);

/// Period in which a parent lot needs its components.
enum class ComponentTiming {
  ParentStart,  // planned start of the parent lot
  ParentDue,    // due period of the parent lot
};

std::string_view to_string(ComponentTiming timing);
ComponentTiming parse_component_timing(std::string_view text);

/// Component gross requirements per period now..now+horizon-1, timed at each
/// parent lot's planned start (or due period).
std::map<ItemId, std::vector<Pieces>> explode_bom(std::span<const PlannedLot> product_lots,
                                                  const ProductionSystem& system, Period now, int horizon,
                                                  ComponentTiming timing = ComponentTiming::ParentStart);

/// Planning view of one item at the start of an MRP run. Vectors are indexed
/// by period offset from `now`.
struct MrpItemState {
  ItemId item;
  Pieces on_hand = 0;
  std::vector<Pieces> gross;
  std::vector<Pieces> scheduled_receipts;
  Pieces safety_stock = 0;
  Period delta = 0;  // latest due period covered by a released order (absolute)
};

/// delta = max(delta, last covered due period of the released lot).
void update_delta(MrpItemState& state, const PlannedLot& released);
void update_delta(Period& delta, const PlannedLot& released);

struct MrpTraceRow {
  Period run = 0;  // period in which MRP ran
  Period period = 0;
  ItemId item;
  Pieces gross = 0;
  Pieces receipts = 0;
  Pieces projected = 0;
  Pieces net = 0;
  Pieces lots = 0;
};

struct MrpResult {
  std::map<ItemId, std::vector<PlannedLot>> planned;
  std::vector<PlannedLot> releases;  // planned_start <= now, products first
  std::vector<MrpTraceRow> trace;
};

/// Net requirements of one item over the horizon, lot-for-lot: each period's
/// requirement is assumed received in that period when projecting the next.
std::vector<Pieces> net_requirements(const MrpItemState& state, MrpMode mode, Period now);

/// One rolling-horizon MRP run: final products are netted (mode-dependent),
/// lot-sized, and scheduled; their lots are exploded into component
/// requirements which are netted with standard netting and zero safety stock.
/// Component states may carry committed gross requirements (e.g. blocked
/// product orders) that are added to the explosion.
MrpResult run_mrp(const ProductionSystem& system, const PlanningParams& params, Period now, int horizon,
                  std::span<const MrpItemState> products, std::span<const MrpItemState> components,
                  bool with_trace = false, ComponentTiming timing = ComponentTiming::ParentStart);

void write_mrp_trace(std::ostream& out, std::span<const MrpTraceRow> rows, bool header);

enum class OrderStatus { Planned, Released, InProcess, Completed };

/// A committed lot. The lot size never changes after creation.
struct ProductionOrder {
  OrderId id = 0;
  ItemId item;
  Pieces lotsize = 0;
  Period due = 0;
  Period planned_start = 0;
  Period projected_completion = 0;
  Period covered_first = 0;
  Period covered_last = 0;
  Period created = 0;
  OrderStatus status = OrderStatus::Planned;
  std::optional<Minutes> release_time;
  std::optional<Minutes> start_time;
  std::optional<Minutes> end_time;

  bool open() const { return status != OrderStatus::Completed; }
};

}  // namespace mrpsim
