#pragma once

#include <cstdint>
#include <random>

namespace framepot {

// SplitMix64 output for the index-th element of the stream seeded by `seed`.
// Used to derive one independent substream per Monte Carlo replica, so results
// are reproducible and independent of the worker count.
inline uint64_t splitmix64_at(uint64_t seed, uint64_t index) {
  uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 substream(uint64_t seed, uint64_t index) {
  return std::mt19937_64(splitmix64_at(seed, index));
}

// [0,1) with 53 random bits; avoids distribution objects whose output is not
// pinned down by the standard.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection.
inline uint64_t uniform_below(std::mt19937_64& g, uint64_t bound) {
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t r = g();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace framepot
