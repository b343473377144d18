#include "mrpsim/mrp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace mrpsim {

std::string_view to_string(MrpMode mode) { return mode == MrpMode::Standard ? "standard" : "extended"; }

MrpMode parse_mode(std::string_view text) {
  if (text == "standard") return MrpMode::Standard;
  if (text == "extended") return MrpMode::Extended;
  throw ConfigError("unknown MRP mode '" + std::string(text) + "' (allowed: standard, extended)");
}

LotPolicy LotPolicy::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("lot policy '" + std::string(text) + "' must look like FOP:<periods> or FOQ:<pieces>");
  auto kind = text.substr(0, colon);
  auto value = std::string(text.substr(colon + 1));
  int param = 0;
  try {
    std::size_t used = 0;
    param = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    throw ConfigError("lot policy parameter '" + value + "' is not an integer");
  }
  if (kind == "FOP" || kind == "fop") return fop(param);
  if (kind == "FOQ" || kind == "foq") return foq(param);
  throw ConfigError("unknown lot policy '" + std::string(kind) + "' (allowed: FOP, FOQ)");
}

std::string LotPolicy::to_string() const { return std::string(kind_name()) + ":" + std::to_string(param); }

namespace {

constexpr std::array kPltSet{1, 2, 3, 4, 6, 8};
constexpr std::array kSstSet{0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 1.5, 2.0};
constexpr std::array kFopSet{1, 2, 5, 6, 9};
constexpr std::array kFoqSet{200, 400, 800, 1200, 1600};
constexpr std::array kComponentLotSet{800, 1600};

template <typename Range>
std::string join(const Range& r) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto v : r) {
    os << (first ? "" : ", ") << v;
    first = false;
  }
  os << '}';
  return os.str();
}

}  // namespace

void PlanningParams::validate() const {
  if (std::find(kPltSet.begin(), kPltSet.end(), plt) == kPltSet.end())
    throw ConfigError("PLT " + std::to_string(plt) + " not in allowed set " + join(kPltSet));
  if (std::none_of(kSstSet.begin(), kSstSet.end(), [&](double s) { return std::abs(s - sst_factor) < 1e-9; })) {
    std::ostringstream os;
    os << "SST " << sst_factor << " not in allowed set " << join(kSstSet);
    throw ConfigError(os.str());
  }
  if (policy.kind == LotPolicyKind::FOP &&
      std::find(kFopSet.begin(), kFopSet.end(), policy.param) == kFopSet.end())
    throw ConfigError("FOP " + std::to_string(policy.param) + " not in allowed set " + join(kFopSet));
  if (policy.kind == LotPolicyKind::FOQ &&
      std::find(kFoqSet.begin(), kFoqSet.end(), policy.param) == kFoqSet.end())
    throw ConfigError("FOQ " + std::to_string(policy.param) + " not in allowed set " + join(kFoqSet));
  if (std::find(kComponentLotSet.begin(), kComponentLotSet.end(), component_lot) == kComponentLotSet.end())
    throw ConfigError("component lot " + std::to_string(component_lot) + " not in allowed set " +
                      join(kComponentLotSet));
  if (component_plt < 1) throw ConfigError("component PLT must be >= 1");
}

Pieces PlanningParams::safety_stock(Pieces expected_order_amount) const {
  return std::llround(sst_factor * static_cast<double>(expected_order_amount));
}

void check_horizon(const PlanningParams& params, int forecast_horizon, int planning_horizon) {
  const int window = params.policy.kind == LotPolicyKind::FOP ? params.policy.param : 1;
  const int needed = forecast_horizon + params.plt + window + params.component_plt;
  if (planning_horizon < needed)
    throw ConfigError("planning horizon " + std::to_string(planning_horizon) + " shorter than required " +
                      std::to_string(needed) + " periods");
}

Pieces net_requirements_standard(Pieces y_prev, Pieces g, Pieces r, Pieces s) {
  return std::max<Pieces>(s - (y_prev - g + r), 0);
}

Pieces net_requirements_extended(Pieces y_prev, Pieces g, Pieces r, Pieces s, Period t, Period delta) {
  if (t <= delta) return std::max<Pieces>(-y_prev + g - r, 0);
  return net_requirements_standard(y_prev, g, r, s);
}

namespace {

// Periods between a lot and the next one carry no requirement of their own,
// so the earlier lot covers them too.
void extend_coverage(std::vector<PlannedLot>& lots) {
  for (std::size_t i = 0; i + 1 < lots.size(); ++i)
    lots[i].covered_last = std::max(lots[i].covered_last, lots[i + 1].due - 1);
}

}  // namespace

std::vector<PlannedLot> lot_size_fop(std::span<const Pieces> net, int periods, Period first_period) {
  if (periods < 1) throw ConfigError("FOP period must be >= 1");
  std::vector<PlannedLot> lots;
  const auto n = static_cast<int>(net.size());
  int t = 0;
  while (t < n) {
    if (net[static_cast<std::size_t>(t)] <= 0) {
      ++t;
      continue;
    }
    const int end = std::min(t + periods, n);
    Pieces qty = 0;
    for (int u = t; u < end; ++u) qty += std::max<Pieces>(net[static_cast<std::size_t>(u)], 0);
    PlannedLot lot;
    lot.quantity = qty;
    lot.due = first_period + t;
    lot.covered_first = first_period + t;
    lot.covered_last = first_period + end - 1;
    lots.push_back(lot);
    t = end;
  }
  extend_coverage(lots);
  return lots;
}

std::vector<PlannedLot> lot_size_foq(std::span<const Pieces> net, Pieces quantity, Period first_period) {
  if (quantity <= 0) throw ConfigError("FOQ quantity must be > 0");
  std::vector<PlannedLot> lots;
  Pieces surplus = 0;
  for (std::size_t t = 0; t < net.size(); ++t) {
    const Pieces need = net[t];
    if (need <= 0) continue;
    if (surplus >= need) {
      surplus -= need;
      lots.back().covered_last = first_period + static_cast<Period>(t);
      continue;
    }
    const Pieces residual = need - surplus;
    const Pieces lot_qty = (residual + quantity - 1) / quantity * quantity;
    surplus = lot_qty - residual;
    PlannedLot lot;
    lot.quantity = lot_qty;
    lot.due = first_period + static_cast<Period>(t);
    lot.covered_first = lot.covered_last = lot.due;
    lots.push_back(lot);
  }
  extend_coverage(lots);
  return lots;
}

void backward_schedule(std::span<PlannedLot> lots, int plt, Period now) {
  if (plt < 1) throw ConfigError("planned lead time must be >= 1");
  for (auto& lot : lots) {
    lot.planned_start = lot.due - plt;
    lot.projected_completion = lot.due;
    if (lot.planned_start < now) {
      lot.planned_start = now;
      lot.projected_completion = now + plt;
    }
  }
}

std::string_view to_string(ComponentTiming timing) {
  return timing == ComponentTiming::ParentStart ? "parent_start" : "parent_due";
}

ComponentTiming parse_component_timing(std::string_view text) {
  if (text == "parent_start") return ComponentTiming::ParentStart;
  if (text == "parent_due") return ComponentTiming::ParentDue;
  throw ConfigError("unknown component timing '" + std::string(text) + "' (allowed: parent_start, parent_due)");
}

std::map<ItemId, std::vector<Pieces>> explode_bom(std::span<const PlannedLot> product_lots,
                                                  const ProductionSystem& system, Period now, int horizon,
                                                  ComponentTiming timing) {
  std::map<ItemId, std::vector<Pieces>> gross;
  for (ItemId c : system.components()) gross[c].assign(static_cast<std::size_t>(horizon), 0);
  for (const auto& lot : product_lots) {
    const Period at = timing == ComponentTiming::ParentStart ? lot.planned_start : std::max(lot.due, now);
    const int offset = at - now;
    if (offset < 0 || offset >= horizon) continue;
    for (const auto& line : system.item(lot.item).bom) {
      auto& g = gross[line.component];
      if (g.empty()) g.assign(static_cast<std::size_t>(horizon), 0);
      g[static_cast<std::size_t>(offset)] += lot.quantity * line.quantity;
    }
  }
  return gross;
}

void update_delta(Period& delta, const PlannedLot& released) { delta = std::max(delta, released.covered_last); }

void update_delta(MrpItemState& state, const PlannedLot& released) { update_delta(state.delta, released); }

std::vector<Pieces> net_requirements(const MrpItemState& state, MrpMode mode, Period now) {
  const std::size_t horizon = state.gross.size();
  std::vector<Pieces> net(horizon, 0);
  const Period delta_rel = state.delta - now;
  Pieces y = state.on_hand;
  for (std::size_t t = 0; t < horizon; ++t) {
    const Pieces g = state.gross[t];
    const Pieces r = t < state.scheduled_receipts.size() ? state.scheduled_receipts[t] : 0;
    net[t] = mode == MrpMode::Extended
                 ? net_requirements_extended(y, g, r, state.safety_stock, static_cast<Period>(t), delta_rel)
                 : net_requirements_standard(y, g, r, state.safety_stock);
    y = y - g + r + net[t];
  }
  return net;
}

namespace {

void append_trace(std::vector<MrpTraceRow>& trace, const MrpItemState& state, std::span<const Pieces> net,
                  std::span<const PlannedLot> lots, Period now) {
  const std::size_t horizon = state.gross.size();
  std::vector<Pieces> lot_receipts(horizon, 0);
  for (const auto& lot : lots) {
    const auto off = static_cast<std::size_t>(lot.due - now);
    if (off < horizon) lot_receipts[off] += lot.quantity;
  }
  Pieces y = state.on_hand;
  for (std::size_t t = 0; t < horizon; ++t) {
    const Pieces r = t < state.scheduled_receipts.size() ? state.scheduled_receipts[t] : 0;
    y = y - state.gross[t] + r + lot_receipts[t];
    trace.push_back({now, now + static_cast<Period>(t), state.item, state.gross[t], r, y, net[t], lot_receipts[t]});
  }
}

std::vector<PlannedLot> plan_item(const MrpItemState& state, MrpMode mode, const LotPolicy& policy, int plt,
                                  Period now, std::vector<MrpTraceRow>* trace) {
  const auto net = net_requirements(state, mode, now);
  auto lots = policy.kind == LotPolicyKind::FOP ? lot_size_fop(net, policy.param, now)
                                                 : lot_size_foq(net, policy.param, now);
  for (auto& lot : lots) lot.item = state.item;
  backward_schedule(lots, plt, now);
  if (trace) append_trace(*trace, state, net, lots, now);
  return lots;
}

}  // namespace

MrpResult run_mrp(const ProductionSystem& system, const PlanningParams& params, Period now, int horizon,
                  std::span<const MrpItemState> products, std::span<const MrpItemState> components,
                  bool with_trace, ComponentTiming timing) {
  if (horizon < 1) throw ConfigError("planning horizon must be >= 1");
  MrpResult result;
  auto* trace = with_trace ? &result.trace : nullptr;

  std::vector<PlannedLot> product_lots;
  for (const auto& state : products) {
    if (static_cast<int>(state.gross.size()) != horizon)
      throw ConfigError("gross requirement vector does not match planning horizon");
    auto lots = plan_item(state, params.mode, params.policy, params.plt, now, trace);
    product_lots.insert(product_lots.end(), lots.begin(), lots.end());
    result.planned[state.item] = std::move(lots);
  }

  auto exploded = explode_bom(product_lots, system, now, horizon, timing);
  std::vector<PlannedLot> component_lots;
  for (const auto& given : components) {
    MrpItemState state = given;
    state.gross.resize(static_cast<std::size_t>(horizon), 0);
    state.safety_stock = 0;
    if (auto it = exploded.find(state.item); it != exploded.end())
      for (std::size_t t = 0; t < state.gross.size(); ++t) state.gross[t] += it->second[t];
    auto lots = plan_item(state, MrpMode::Standard, LotPolicy::foq(static_cast<int>(params.component_lot)),
                          params.component_plt, now, trace);
    component_lots.insert(component_lots.end(), lots.begin(), lots.end());
    result.planned[state.item] = std::move(lots);
  }

  for (const auto* lots : {&product_lots, &component_lots})
    for (const auto& lot : *lots)
      if (lot.planned_start <= now) result.releases.push_back(lot);
  return result;
}

void write_mrp_trace(std::ostream& out, std::span<const MrpTraceRow> rows, bool header) {
  if (header) out << "run,period,item,g,r,y,n,lots\n";
  for (const auto& r : rows)
    out << r.run << ',' << r.period << ',' << r.item.value << ',' << r.gross << ',' << r.receipts << ',' << r.projected << ','
        << r.net << ',' << r.lots << '\n';
}

}  // namespace mrpsim
