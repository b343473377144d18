#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mrpsim {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; a stable, platform-independent mixing step.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a substream seed from a parent seed and a key path. Distinct key
/// paths give statistically independent streams; the result depends only on
/// the values, never on call order.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(parent);
  for (auto k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

// Key-space tags so forecast and setup streams never collide.
inline constexpr std::uint64_t kForecastTag = 0xF0;
inline constexpr std::uint64_t kSetupTag = 0x5E;

}  // namespace mrpsim
