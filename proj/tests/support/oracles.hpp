#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Kept deliberately naive: projected on-hand walked period by period.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using Pieces = std::int64_t;

// Published three-scenario forecast example: due date 40, alpha 0.04.
struct ForecastExample {
  const char* name;
  int beta;
  bool permanent_under;  // otherwise temporary overbooking (or unbiased for beta 0)
  std::array<Pieces, 12> epsilon;  // j = 11 .. 0
  std::array<Pieces, 12> value;    // D_{40,j}, j = 11 .. 0
};

inline constexpr std::array<ForecastExample, 3> kForecastExamples{{
    {"unbiased", 0, false,
     {0, 24, 32, -15, -47, 123, 27, -125, 56, -58, -78, 0},
     {800, 824, 856, 841, 794, 917, 944, 819, 875, 817, 739, 739}},
    {"permanent underbooking", 1, true,
     {0, 56, 64, 17, -15, 155, 59, -93, 88, -26, -46, 0},
     {480, 536, 600, 617, 602, 757, 816, 723, 811, 785, 739, 739}},
    {"temporary overbooking", 1, false,
     {0, 24, 32, 17, -15, 187, 27, -125, -8, -90, -110, 0},
     {800, 824, 856, 873, 858, 1045, 1072, 947, 939, 849, 739, 739}},
}};

// Net requirement with a floor: whatever is needed to keep the projected
// balance at or above `floor` after this period.
inline Pieces topup(Pieces y_prev, Pieces g, Pieces r, Pieces floor) {
  const Pieces after = y_prev + r - g;
  return after >= floor ? 0 : floor - after;
}

inline Pieces standard(Pieces y, Pieces g, Pieces r, Pieces s) { return topup(y, g, r, s); }

inline Pieces extended(Pieces y, Pieces g, Pieces r, Pieces s, int t, int delta) {
  return t <= delta ? topup(y, g, r, 0) : topup(y, g, r, s);
}

// Lot-for-lot netting over a horizon; the requirement is received in its own
// period. `now` is the absolute period of index 0.
inline std::vector<Pieces> net_vector(Pieces on_hand, const std::vector<Pieces>& g, const std::vector<Pieces>& r,
                                      Pieces s, bool extended_mode, int now, int delta) {
  std::vector<Pieces> out(g.size());
  Pieces y = on_hand;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int t = now + static_cast<int>(i);
    const Pieces n = extended_mode ? extended(y, g[i], r[i], s, t, delta) : standard(y, g[i], r[i], s);
    out[i] = n;
    y = y + r[i] + n - g[i];
  }
  return out;
}

// Smallest multiple of q that is >= n.
inline Pieces round_up(Pieces n, Pieces q) {
  Pieces m = 0;
  while (m < n) m += q;
  return m;
}

// Truncated normal moments by numerical integration (Simpson, fine grid).
struct Moments {
  double mean;
  double sd;
};

inline Moments truncated_normal(double mu, double sigma, double lo, double hi) {
  const int n = 200000;
  const double h = (hi - lo) / n;
  double z = 0, m1 = 0, m2 = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + i * h;
    const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    const double p = std::exp(-0.5 * ((x - mu) / sigma) * ((x - mu) / sigma));
    z += w * p;
    m1 += w * p * x;
    m2 += w * p * x * x;
  }
  const double mean = m1 / z;
  return {mean, std::sqrt(m2 / z - mean * mean)};
}

}  // namespace oracle
