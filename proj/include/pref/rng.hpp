#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pref {

using Rng = std::mt19937_64;

/// Mixes a master seed with stream keys (trial index, grid point, ...) into an
/// independent 64-bit seed, so each unit of work gets its own stream no matter
/// which worker thread runs it.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  for (auto k : keys) h = mix(h ^ mix(k));
  return h;
}

/// Uniform integer in [lo, hi].
template <typename Int>
Int uniform_int(Rng& rng, Int lo, Int hi) {
  return std::uniform_int_distribution<Int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace pref
