#include <vector>

#include "doctest.h"
#include "mrpsim/inventory.hpp"

using namespace mrpsim;

namespace {

ProductionOrder product_lot(OrderId id, Pieces qty) {
  ProductionOrder o;
  o.id = id;
  o.item = ItemId{10};
  o.lotsize = qty;
  return o;
}

}  // namespace

TEST_CASE("release withdraws components atomically") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  StockLedger ledger;
  ledger.set_initial(ItemId{20}, 2000);
  auto o = product_lot(0, 800);
  CHECK(try_release(o, ledger, sys, 60) == ReleaseOutcome::Released);
  CHECK(ledger.on_hand(ItemId{20}) == 400);
  CHECK(o.release_time == 60.0);
  CHECK(o.status == OrderStatus::Released);
}

TEST_CASE("short component stock blocks until a receipt arrives") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  StockLedger ledger;
  ledger.set_initial(ItemId{20}, 1000);
  std::vector<ProductionOrder> orders{product_lot(0, 800)};
  CHECK(try_release(orders[0], ledger, sys, 0) == ReleaseOutcome::Blocked);
  CHECK(ledger.on_hand(ItemId{20}) == 1000);
  ledger.blocked().push_back(0);

  std::vector<OrderId> released;
  retry_blocked(ledger, orders, sys, 100, [&](ProductionOrder& o) { released.push_back(o.id); });
  CHECK(released.empty());

  ledger.receive(ItemId{20}, 600);
  retry_blocked(ledger, orders, sys, 200, [&](ProductionOrder& o) { released.push_back(o.id); });
  CHECK(released == std::vector<OrderId>{0});
  CHECK(ledger.on_hand(ItemId{20}) == 0);
  CHECK(ledger.blocked().empty());
  CHECK(ledger.balance(ItemId{20}).conserved());
}

TEST_CASE("component lots always release") {
  const auto sys = build_default_system(UtilizationLevel::Low);
  StockLedger ledger;
  ProductionOrder o;
  o.item = ItemId{21};
  o.lotsize = 1600;
  CHECK(try_release(o, ledger, sys, 0) == ReleaseOutcome::Released);
}

TEST_CASE("completion books stock") {
  StockLedger ledger;
  ProductionOrder o;
  o.item = ItemId{20};
  o.lotsize = 1600;
  receive(o, ledger, 500);
  CHECK(ledger.on_hand(ItemId{20}) == 1600);
  CHECK(o.status == OrderStatus::Completed);
  CHECK_FALSE(o.open());
}

TEST_CASE("fulfilment ships whole demands only") {
  StockLedger ledger;
  ledger.set_initial(ItemId{13}, 800);
  std::vector<CustomerDemand> d{{ItemId{13}, 40, 739, std::nullopt}};
  CHECK(fulfill(d, ledger, 40).size() == 1);
  CHECK(ledger.on_hand(ItemId{13}) == 61);

  StockLedger short_ledger;
  short_ledger.set_initial(ItemId{10}, 799);
  std::vector<CustomerDemand> e{{ItemId{10}, 5, 800, std::nullopt}};
  CHECK(fulfill(e, short_ledger, 5).empty());
  CHECK(e[0].open());
  CHECK(short_ledger.on_hand(ItemId{10}) == 799);
}

TEST_CASE("backorders fill oldest due date first") {
  StockLedger ledger;
  ledger.set_initial(ItemId{10}, 900);
  std::vector<CustomerDemand> d{{ItemId{10}, 9, 800, std::nullopt}, {ItemId{10}, 5, 800, std::nullopt}};
  const auto filled = fulfill(d, ledger, 10);
  REQUIRE(filled.size() == 1);
  CHECK(d[filled[0]].due == 5);
  CHECK(d[0].open());
  CHECK(ledger.on_hand(ItemId{10}) == 100);
}

TEST_CASE("future demands are not shipped early") {
  StockLedger ledger;
  ledger.set_initial(ItemId{10}, 900);
  std::vector<CustomerDemand> d{{ItemId{10}, 12, 800, std::nullopt}};
  CHECK(fulfill(d, ledger, 11).empty());
}
