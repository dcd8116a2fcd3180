#pragma once

// Portable randomness helpers. std::uniform_int_distribution and std::shuffle
// are implementation-defined, so everything that feeds an experiment goes
// through these instead; results are then bit-identical across standard
// libraries for a given seed.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace bbr {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent child seed from (parent, index).
inline constexpr std::uint64_t mix_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Uniform integer in [0, bound). bound must be > 0.
template <class URBG>
std::uint64_t uniform_below(URBG& rng, std::uint64_t bound) {
  static_assert(URBG::min() == 0 && URBG::max() == ~std::uint64_t{0},
                "uniform_below expects a full-range 64-bit generator");
  // Rejection sampling on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

/// Uniform integer in [lo, hi] (inclusive).
template <class URBG>
std::uint64_t uniform_between(URBG& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

/// Fisher-Yates shuffle.
template <class URBG, class T>
void shuffle(std::span<T> items, URBG& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace bbr
