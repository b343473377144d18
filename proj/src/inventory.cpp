#include "mrpsim/inventory.hpp"

#include <algorithm>
#include <numeric>

namespace mrpsim {

void StockLedger::set_initial(ItemId item, Pieces quantity) {
  if (quantity < 0) throw ConfigError("initial stock must be >= 0");
  auto& b = balances_[item];
  b.on_hand += quantity - b.initial;
  b.initial = quantity;
}

Pieces StockLedger::on_hand(ItemId item) const {
  auto it = balances_.find(item);
  return it == balances_.end() ? 0 : it->second.on_hand;
}

void StockLedger::receive(ItemId item, Pieces quantity) {
  auto& b = balances_[item];
  b.receipts += quantity;
  b.on_hand += quantity;
}

bool StockLedger::withdraw(ItemId item, Pieces quantity) {
  auto& b = balances_[item];
  if (b.on_hand < quantity) return false;
  b.withdrawals += quantity;
  b.on_hand -= quantity;
  return true;
}

StockLedger::Balance StockLedger::balance(ItemId item) const {
  auto it = balances_.find(item);
  return it == balances_.end() ? Balance{} : it->second;
}

ReleaseOutcome try_release(ProductionOrder& order, StockLedger& ledger, const ProductionSystem& system, Minutes at) {
  const Item& item = system.item(order.item);
  for (const auto& line : item.bom)
    if (ledger.on_hand(line.component) < order.lotsize * line.quantity) return ReleaseOutcome::Blocked;
  for (const auto& line : item.bom) ledger.withdraw(line.component, order.lotsize * line.quantity);
  order.status = OrderStatus::Released;
  order.release_time = at;
  return ReleaseOutcome::Released;
}

void retry_blocked(StockLedger& ledger, std::span<ProductionOrder> orders, const ProductionSystem& system, Minutes at,
                   const std::function<void(ProductionOrder&)>& on_release) {
  auto& queue = ledger.blocked();
  for (auto it = queue.begin(); it != queue.end();) {
    ProductionOrder& order = orders[*it];
    if (try_release(order, ledger, system, at) == ReleaseOutcome::Released) {
      it = queue.erase(it);
      if (on_release) on_release(order);
    } else {
      ++it;
    }
  }
}

void receive(ProductionOrder& order, StockLedger& ledger, Minutes at) {
  order.status = OrderStatus::Completed;
  order.end_time = at;
  ledger.receive(order.item, order.lotsize);
}

std::vector<std::size_t> fulfill(std::vector<CustomerDemand>& demands, StockLedger& ledger, Period period) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < demands.size(); ++i)
    if (demands[i].open() && demands[i].due <= period) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return demands[a].due < demands[b].due; });

  std::vector<std::size_t> filled;
  for (auto i : idx) {
    auto& d = demands[i];
    if (ledger.withdraw(d.product, d.quantity)) {
      d.fulfilled = period;
      filled.push_back(i);
    }
  }
  return filled;
}

}  // namespace mrpsim
