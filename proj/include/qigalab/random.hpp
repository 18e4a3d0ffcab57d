#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace qigalab {

// Every stochastic routine takes its engine by reference; a run owns exactly one.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
// Spelled out instead of std::uniform_real_distribution so that seeded output
// is identical across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

// Uniform integer in [0, n). Unbiased (rejection on the engine's 64-bit range).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return static_cast<std::size_t>(draw % bound);
}

}  // namespace qigalab
