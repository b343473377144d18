#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "mrpsim/mrp.hpp"
#include "oracles.hpp"

using namespace mrpsim;

namespace {

struct RandomState {
  MrpItemState state;
  Period now;
};

RandomState random_state(std::mt19937_64& rng) {
  std::uniform_int_distribution<Pieces> stock(0, 3000), gross(0, 1200), coin(0, 3);
  std::uniform_int_distribution<int> delta_off(-5, 20);
  const std::array<Pieces, 5> ssts{0, 160, 320, 800, 1600};
  RandomState r;
  r.now = 50;
  auto& s = r.state;
  s.item = ItemId{10};
  s.on_hand = stock(rng);
  s.safety_stock = ssts[static_cast<std::size_t>(coin(rng))];
  s.delta = r.now + delta_off(rng);
  s.gross.resize(20);
  s.scheduled_receipts.resize(20);
  for (std::size_t t = 0; t < 20; ++t) {
    s.gross[t] = coin(rng) == 0 ? gross(rng) : 0;
    s.scheduled_receipts[t] = coin(rng) == 0 ? gross(rng) : 0;
  }
  return r;
}

}  // namespace

TEST_CASE("netting matches the oracle on random horizons") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5000; ++i) {
    auto [s, now] = random_state(rng);
    for (auto mode : {MrpMode::Standard, MrpMode::Extended}) {
      const auto got = net_requirements(s, mode, now);
      const auto want = oracle::net_vector(s.on_hand, s.gross, s.scheduled_receipts, s.safety_stock,
                                           mode == MrpMode::Extended, now, s.delta);
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("extended never needs more than standard, cumulatively") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 5000; ++i) {
    auto [s, now] = random_state(rng);
    const auto a = net_requirements(s, MrpMode::Standard, now);
    const auto b = net_requirements(s, MrpMode::Extended, now);
    Pieces ca = 0, cb = 0;
    for (std::size_t t = 0; t < a.size(); ++t) {
      ca += a[t];
      cb += b[t];
      REQUIRE(cb <= ca);
    }
    if (s.safety_stock == 0 || s.delta < now) REQUIRE(a == b);
  }
}

TEST_CASE("lot sizes cover net requirements") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Pieces> need(0, 1500);
  std::uniform_int_distribution<int> pick(0, 4);
  const std::array<int, 5> fops{1, 2, 5, 6, 9};
  const std::array<Pieces, 5> foqs{200, 400, 800, 1200, 1600};
  for (int i = 0; i < 5000; ++i) {
    std::vector<Pieces> net(25);
    for (auto& n : net) n = pick(rng) < 2 ? need(rng) : 0;
    const Pieces total = std::accumulate(net.begin(), net.end(), Pieces{0});

    const int p = fops[static_cast<std::size_t>(pick(rng))];
    const auto fop = lot_size_fop(net, p, 100);
    Pieces sum = 0;
    for (std::size_t k = 0; k < fop.size(); ++k) {
      const auto& lot = fop[k];
      Pieces covered = 0;
      for (Period t = lot.covered_first; t <= lot.covered_last; ++t) covered += net[static_cast<std::size_t>(t - 100)];
      REQUIRE(lot.quantity == covered);
      REQUIRE(lot.quantity > 0);
      if (k + 1 < fop.size()) REQUIRE(lot.covered_last + 1 == fop[k + 1].covered_first);
      sum += lot.quantity;
    }
    REQUIRE(sum == total);

    const Pieces q = foqs[static_cast<std::size_t>(pick(rng))];
    const auto foq = lot_size_foq(net, q, 100);
    sum = 0;
    for (const auto& lot : foq) {
      REQUIRE(lot.quantity % q == 0);
      REQUIRE(lot.quantity > 0);
      sum += lot.quantity;
    }
    REQUIRE(sum >= total);
    REQUIRE(sum - total < q);
    // cumulative supply never falls behind cumulative need
    Pieces supply = 0, demand = 0;
    std::size_t next = 0;
    for (std::size_t t = 0; t < net.size(); ++t) {
      while (next < foq.size() && foq[next].due == 100 + static_cast<Period>(t)) supply += foq[next++].quantity;
      demand += net[t];
      REQUIRE(supply >= demand);
    }
  }
}
