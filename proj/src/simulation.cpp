#include "mrpsim/simulation.hpp"

#include <algorithm>
#include <numeric>

namespace mrpsim {

std::string_view to_string(UpdateTiming timing) {
  return timing == UpdateTiming::AfterRelease ? "after_release" : "before_mrp";
}

UpdateTiming parse_update_timing(std::string_view text) {
  if (text == "after_release") return UpdateTiming::AfterRelease;
  if (text == "before_mrp") return UpdateTiming::BeforeMrp;
  throw ConfigError("unknown update timing '" + std::string(text) + "' (allowed: after_release, before_mrp)");
}

std::string_view to_string(ReceiptProjection rule) {
  return rule == ReceiptProjection::Completion ? "completion" : "due";
}

ReceiptProjection parse_receipt_projection(std::string_view text) {
  if (text == "completion") return ReceiptProjection::Completion;
  if (text == "due") return ReceiptProjection::DueDate;
  throw ConfigError("unknown receipt projection '" + std::string(text) + "' (allowed: completion, due)");
}

void RunConfig::validate() const {
  if (!system) throw ConfigError("run config has no production system");
  scenario.validate();
  params.validate();
  check_horizon(params, scenario.horizon, planning_horizon);
  if (run_length < 1) throw ConfigError("run length must be >= 1");
  if (warmup < 0 || warmup >= run_length) throw ConfigError("warm-up must be in [0, run length)");
}

namespace {

const RunConfig& validated(const RunConfig& c) {
  c.validate();
  return c;
}

}  // namespace

Simulation::Simulation(RunConfig config)
    : config_(std::move(validated(config))),
      system_(*config_.system),
      book_(system_, config_.scenario, config_.seed),
      shop_(system_, config_.seed),
      kpi_(system_.costs()) {
  if (config_.replay) book_.set_replay(*config_.replay);
  book_.set_recording(config_.record_forecasts);
  shop_.set_trace(config_.trace_events);
  shop_.set_recording(config_.record_operations);
  shop_.set_accounting_window(period_start(config_.warmup + 1), period_end(config_.run_length));
  for (const auto& item : system_.items()) ledger_.set_initial(item.id, 0);
  for (ItemId k : system_.final_products()) delta_[k] = 0;
}

Period Simulation::delta(ItemId product) const {
  auto it = delta_.find(product);
  return it == delta_.end() ? 0 : it->second;
}

std::vector<MrpItemState> Simulation::product_states(Period t) const {
  const int horizon = config_.planning_horizon;
  std::vector<MrpItemState> states;
  for (ItemId k : system_.final_products()) {
    MrpItemState s;
    s.item = k;
    s.on_hand = ledger_.on_hand(k);
    s.gross = book_.gross_requirements(k, t, horizon);
    for (const auto& d : demands_)
      if (d.product == k && d.open() && d.due < t) s.gross[0] += d.quantity;
    s.scheduled_receipts.assign(static_cast<std::size_t>(horizon), 0);
    s.safety_stock = config_.params.safety_stock(system_.item(k).expected_order_amount);
    s.delta = delta(k);
    states.push_back(std::move(s));
  }
  return states;
}

std::vector<MrpItemState> Simulation::component_states() const {
  const int horizon = config_.planning_horizon;
  std::vector<MrpItemState> states;
  for (ItemId c : system_.components()) {
    MrpItemState s;
    s.item = c;
    s.on_hand = ledger_.on_hand(c);
    s.gross.assign(static_cast<std::size_t>(horizon), 0);
    s.scheduled_receipts.assign(static_cast<std::size_t>(horizon), 0);
    states.push_back(std::move(s));
  }
  auto find = [&](ItemId id) -> MrpItemState* {
    auto it = std::find_if(states.begin(), states.end(), [id](const auto& s) { return s.item == id; });
    return it == states.end() ? nullptr : &*it;
  };
  // Blocked product orders still need their components now.
  for (OrderId id : ledger_.blocked()) {
    const auto& order = orders_[id];
    for (const auto& line : system_.item(order.item).bom)
      if (auto* s = find(line.component)) s->gross[0] += order.lotsize * line.quantity;
  }
  return states;
}

void Simulation::dispatch(ProductionOrder& order) {
  shop_.dispatch(order.id, order.item, order.lotsize, *order.release_time);
  if (system_.item(order.item).is_final()) {
    for (const auto& line : system_.item(order.item).bom) component_need_released_ += order.lotsize * line.quantity;
  }
}

void Simulation::on_complete(OrderId id, Minutes started, Minutes finished) {
  auto& order = orders_[id];
  order.start_time = started;
  receive(order, ledger_, finished);
  if (system_.item(order.item).is_final()) {
    kpi_.record_final_completion(period_of(finished), (finished - *order.release_time) / kMinutesPerPeriod);
  } else {
    retry_blocked(ledger_, orders_, system_, finished, [this](ProductionOrder& o) { dispatch(o); });
  }
}

void Simulation::step_period() {
  const Period t = ++period_;
  const int horizon = config_.planning_horizon;

  const bool early_updates = config_.model.update_timing == UpdateTiming::BeforeMrp;
  if (early_updates) book_.step(t);

  // firm demands due now; the j = 0 update is always zero
  for (ItemId k : system_.final_products())
    if (system_.demand().is_due(k, t)) demands_.push_back({k, t, book_.forecast(k, t, t), std::nullopt});

  // MRP
  auto products = product_states(t);
  auto components = component_states();
  for (OrderId id : open_orders_) {
    const auto& o = orders_[id];
    const bool final = system_.item(o.item).is_final();
    auto& states = final ? products : components;
    auto it = std::find_if(states.begin(), states.end(), [&](const auto& s) { return s.item == o.item; });
    Period at = std::max(o.due, t);
    if (config_.model.receipts == ReceiptProjection::Completion) {
      const int plt = final ? config_.params.plt : config_.params.component_plt;
      at = o.projected_completion >= t ? o.projected_completion : t + plt;
    }
    const int offset = at - t;
    if (it != states.end() && offset < horizon) it->scheduled_receipts[static_cast<std::size_t>(offset)] += o.lotsize;
  }
  last_mrp_ = run_mrp(system_, config_.params, t, horizon, products, components, config_.trace_mrp,
                      config_.model.component_timing);
  if (config_.trace_mrp) mrp_trace_.insert(mrp_trace_.end(), last_mrp_.trace.begin(), last_mrp_.trace.end());

  // release
  const Minutes release_at = period_start(t);
  for (const auto& lot : last_mrp_.releases) {
    ProductionOrder order;
    order.id = orders_.size();
    order.item = lot.item;
    order.lotsize = lot.quantity;
    order.due = lot.due;
    order.planned_start = lot.planned_start;
    order.projected_completion = lot.projected_completion;
    order.covered_first = lot.covered_first;
    order.covered_last = lot.covered_last;
    order.created = t;
    orders_.push_back(order);
    open_orders_.push_back(order.id);
    auto& o = orders_.back();
    if (system_.item(o.item).is_final()) {
      update_delta(delta_[o.item], lot);
      kpi_.record_final_release(t);
      ledger_.blocked().push_back(o.id);
    } else {
      try_release(o, ledger_, system_, release_at);
      dispatch(o);
    }
  }
  retry_blocked(ledger_, orders_, system_, release_at, [this](ProductionOrder& o) { dispatch(o); });

  if (!early_updates) book_.step(t);

  // shop floor
  shop_.advance(period_end(t), [this](OrderId id, Minutes s, Minutes f) { on_complete(id, s, f); });
  std::erase_if(open_orders_, [this](OrderId id) { return !orders_[id].open(); });

  // fulfilment
  fulfill(demands_, ledger_, t);
  for (const auto& d : demands_)
    if (d.due == t) kpi_.record_demand(t, d.fulfilled == t);

  // costs
  const auto snap = snapshot(t);
  kpi_.record_snapshot(snap);
  audit(t);

  if (config_.log) {
    *config_.log << "t=" << t << " fgi=" << snap.fgi_pieces << " wip=" << snap.wip_pieces
                 << " backorders=" << snap.backorder_pieces << " released=" << last_mrp_.releases.size()
                 << " blocked=" << ledger_.blocked().size() << " cost=" << accrue(snap, system_.costs()).total()
                 << '\n';
  }
}

PeriodSnapshot Simulation::snapshot(Period t) const {
  PeriodSnapshot s;
  s.period = t;
  s.wip_pieces = shop_.pieces_in_system();
  for (ItemId c : system_.components()) s.wip_pieces += ledger_.on_hand(c);
  for (ItemId k : system_.final_products()) s.fgi_pieces += ledger_.on_hand(k);
  for (const auto& d : demands_)
    if (d.open() && d.due <= t) s.backorder_pieces += d.quantity;
  return s;
}

void Simulation::audit(Period t) {
  PeriodAudit a;
  a.period = t;
  a.min_on_hand = 0;
  bool first = true;
  for (const auto& [item, b] : ledger_.balances()) {
    a.conserved = a.conserved && b.conserved();
    a.min_on_hand = first ? b.on_hand : std::min(a.min_on_hand, b.on_hand);
    first = false;
    if (!system_.item(item).is_final()) a.component_withdrawals += b.withdrawals;
  }
  a.component_need_released = component_need_released_;
  audits_.push_back(a);
}

RunSummary Simulation::summary() const {
  auto s = kpi_.summarize(config_.warmup, config_.run_length);
  const Minutes window = period_end(config_.run_length) - period_start(config_.warmup + 1);
  for (const auto& m : system_.machines()) s.utilization[m.id] = shop_.machine(m.id).window_busy_minutes / window;
  return s;
}

RunSummary Simulation::run() {
  while (period_ < config_.run_length) step_period();
  return summary();
}

RunSummary run(const RunConfig& config) {
  Simulation sim(config);
  return sim.run();
}

}  // namespace mrpsim
