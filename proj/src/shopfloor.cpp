#include "mrpsim/shopfloor.hpp"

#include <algorithm>
#include <cmath>

namespace mrpsim {

Minutes sample_setup(Minutes mean, double cv, Rng& rng) {
  if (mean <= 0) throw ConfigError("setup mean must be > 0");
  if (cv <= 0) return mean;
  const double shape2 = std::log1p(cv * cv);
  const double scale = std::log(mean) - shape2 / 2.0;
  std::lognormal_distribution<double> dist(scale, std::sqrt(shape2));
  return dist(rng);
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::OrderReleased: return "released";
    case EventKind::OperationComplete: return "complete";
    case EventKind::PeriodBoundary: return "boundary";
  }
  return "?";
}

bool ShopFloor::Later::operator()(const SimEvent& a, const SimEvent& b) const {
  auto rank = [](EventKind k) { return k == EventKind::PeriodBoundary ? 1 : 0; };
  if (a.time != b.time) return a.time > b.time;
  if (rank(a.kind) != rank(b.kind)) return rank(a.kind) > rank(b.kind);
  return a.seq > b.seq;
}

ShopFloor::ShopFloor(const ProductionSystem& system, std::uint64_t seed) : system_(system) {
  for (const auto& m : system_.machines()) {
    MachineRuntime rt{MachineState{m.id, {}, std::nullopt, 0, 0, 0}, m,
                      Rng(derive_seed(seed, {kSetupTag, static_cast<std::uint64_t>(m.id.value)}))};
    machines_.emplace(m.id, std::move(rt));
  }
}

ShopFloor::MachineRuntime& ShopFloor::runtime(MachineId id) {
  auto it = machines_.find(id);
  if (it == machines_.end()) throw ConfigError("unknown machine id " + std::to_string(id.value));
  return it->second;
}

const MachineState& ShopFloor::machine(MachineId id) const {
  auto it = machines_.find(id);
  if (it == machines_.end()) throw ConfigError("unknown machine id " + std::to_string(id.value));
  return it->second.state;
}

std::optional<Minutes> ShopFloor::start_time(OrderId order) const {
  auto it = lots_.find(order);
  return it == lots_.end() ? std::nullopt : it->second.first_start;
}

void ShopFloor::set_accounting_window(Minutes from, Minutes to) {
  window_from_ = from;
  window_to_ = to;
}

void ShopFloor::push(SimEvent e) {
  e.seq = next_seq_++;
  events_.push(e);
}

void ShopFloor::log(Minutes t, std::string_view what, OrderId order, MachineId machine) {
  if (tracing_) trace_.push_back({t, what, order, machine.value});
}

void ShopFloor::dispatch(OrderId order, ItemId item, Pieces quantity, Minutes at) {
  if (quantity <= 0) throw ConfigError("lot size must be > 0");
  if (at < now_) throw ConfigError("cannot dispatch into the past");
  if (lots_.contains(order)) throw ConfigError("order " + std::to_string(order) + " already on the shop floor");
  const Item& spec = system_.item(item);
  if (spec.routing.empty()) throw ConfigError("item " + std::to_string(item.value) + " has no routing");
  for (auto m : spec.routing) (void)runtime(m);
  lots_.emplace(order, Lot{item, quantity, 0, at, std::nullopt});
  pieces_in_system_ += quantity;
  push({at, EventKind::OrderReleased, 0, order, spec.routing.front()});
}

void ShopFloor::arrive(OrderId order, MachineId machine, Minutes at) {
  auto& m = runtime(machine);
  lots_.at(order).arrival = at;
  m.state.queue.push_back(order);
  log(at, "arrive", order, machine);
  try_start(m, at);
}

void ShopFloor::try_start(MachineRuntime& m, Minutes at) {
  if (m.state.current || m.state.queue.empty()) return;
  const OrderId order = m.state.queue.front();
  m.state.queue.pop_front();
  Lot& lot = lots_.at(order);
  const Item& item = system_.item(lot.item);
  const Minutes setup = sample_setup(m.spec.setup_time_mean, m.spec.setup_cv, m.rng);
  const Minutes end = at + setup + static_cast<double>(lot.quantity) * item.processing_time;
  if (!lot.first_start) lot.first_start = at;
  m.state.current = order;
  m.state.busy_until = end;
  m.state.busy_minutes += end - at;
  m.state.window_busy_minutes += std::max(0.0, std::min(end, window_to_) - std::max(at, window_from_));
  if (recording_) operations_.push_back({order, m.state.id, lot.arrival, at, setup, end});
  log(at, "start", order, m.state.id);
  push({end, EventKind::OperationComplete, 0, order, m.state.id});
}

void ShopFloor::advance(Minutes until, const CompletionHandler& on_complete) {
  if (until < now_) throw ConfigError("cannot advance backwards in time");
  push({until, EventKind::PeriodBoundary, 0, 0, MachineId{}});
  while (!events_.empty()) {
    const SimEvent e = events_.top();
    events_.pop();
    now_ = e.time;
    if (e.kind == EventKind::PeriodBoundary) {
      if (e.time == until) break;
      continue;
    }
    if (e.kind == EventKind::OrderReleased) {
      log(e.time, "released", e.order, e.machine);
      arrive(e.order, e.machine, e.time);
      continue;
    }
    // Operation complete.
    auto& m = runtime(e.machine);
    m.state.current.reset();
    log(e.time, "complete", e.order, e.machine);
    Lot& lot = lots_.at(e.order);
    const Item& item = system_.item(lot.item);
    ++lot.stage;
    if (lot.stage < item.routing.size()) {
      arrive(e.order, item.routing[lot.stage], e.time);
    } else {
      pieces_in_system_ -= lot.quantity;
      const Minutes started = lot.first_start.value_or(e.time);
      lots_.erase(e.order);
      if (on_complete) on_complete(e.order, started, e.time);
    }
    try_start(m, e.time);
  }
  now_ = until;
}

void ShopFloor::write_trace(std::ostream& out) const {
  out << "time,event,order,machine\n";
  for (const auto& r : trace_) out << r.time << ',' << r.event << ',' << r.order << ',' << r.machine << '\n';
}

}  // namespace mrpsim
