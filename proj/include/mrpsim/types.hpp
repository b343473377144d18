#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace mrpsim {

using Pieces = std::int64_t;
using Period = int;
using Minutes = double;
using OrderId = std::size_t;

inline constexpr Minutes kMinutesPerPeriod = 1440.0;

struct ItemId {
  int value = 0;
  constexpr auto operator<=>(const ItemId&) const = default;
};

struct MachineId {
  int value = 0;
  constexpr auto operator<=>(const MachineId&) const = default;
};

/// Thrown for invalid configurations, parameter sets outside the grid, and
/// references to unknown items or machines.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a results/replay file cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Period t covers minutes [(t-1)*1440, t*1440).
inline constexpr Minutes period_start(Period t) { return (t - 1) * kMinutesPerPeriod; }
inline constexpr Minutes period_end(Period t) { return t * kMinutesPerPeriod; }

/// Period in which an event at `time` falls; an event exactly on a boundary
/// belongs to the period that ends there.
Period period_of(Minutes time);

}  // namespace mrpsim

template <>
struct std::hash<mrpsim::ItemId> {
  std::size_t operator()(const mrpsim::ItemId& id) const noexcept { return std::hash<int>{}(id.value); }
};

template <>
struct std::hash<mrpsim::MachineId> {
  std::size_t operator()(const mrpsim::MachineId& id) const noexcept { return std::hash<int>{}(id.value); }
};
