#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mrpsim/mrp.hpp"
#include "mrpsim/system.hpp"
#include "mrpsim/types.hpp"

namespace mrpsim {

/// Per-item stock with running totals so conservation can be audited:
/// initial + receipts - withdrawals == on_hand, always.
class StockLedger {
 public:
  struct Balance {
    Pieces initial = 0;
    Pieces receipts = 0;
    Pieces withdrawals = 0;
    Pieces on_hand = 0;
    bool conserved() const { return initial + receipts - withdrawals == on_hand && on_hand >= 0; }
  };

  void set_initial(ItemId item, Pieces quantity);
  Pieces on_hand(ItemId item) const;
  void receive(ItemId item, Pieces quantity);
  /// All-or-nothing; returns false and leaves stock untouched if short.
  bool withdraw(ItemId item, Pieces quantity);
  Balance balance(ItemId item) const;
  const std::map<ItemId, Balance>& balances() const { return balances_; }

  /// Product orders waiting for component material, in arrival order.
  std::deque<OrderId>& blocked() { return blocked_; }
  const std::deque<OrderId>& blocked() const { return blocked_; }

 private:
  std::map<ItemId, Balance> balances_;
  std::deque<OrderId> blocked_;
};

enum class ReleaseOutcome { Released, Blocked };

/// Releases a planned order at time `at`. Final-product orders atomically
/// withdraw lotsize × BOM quantity of each component and block if any is
/// short; component orders always release.
ReleaseOutcome try_release(ProductionOrder& order, StockLedger& ledger, const ProductionSystem& system, Minutes at);

/// Retries blocked orders in FIFO order; released ones leave the queue and are
/// passed to `on_release`.
void retry_blocked(StockLedger& ledger, std::span<ProductionOrder> orders, const ProductionSystem& system, Minutes at,
                   const std::function<void(ProductionOrder&)>& on_release);

/// Books a completed lot into stock.
void receive(ProductionOrder& order, StockLedger& ledger, Minutes at);

struct CustomerDemand {
  ItemId product;
  Period due = 0;
  Pieces quantity = 0;
  std::optional<Period> fulfilled;

  bool open() const { return !fulfilled.has_value(); }
};

/// Fulfils open demands due at or before `period`, oldest due date first.
/// A demand ships only in full; otherwise it stays backordered. Returns the
/// indices of demands fulfilled in this call.
std::vector<std::size_t> fulfill(std::vector<CustomerDemand>& demands, StockLedger& ledger, Period period);

}  // namespace mrpsim
