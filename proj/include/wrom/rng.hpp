// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>

namespace wrom {

// SplitMix64 (Steele, Lea, Flood 2014). Fully spelled out here so every
// stream is bit-reproducible across platforms and compilers.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0,1), 53 mantissa bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0,n). Plain modulo: the bias of ~n/2^64 is far below
  // anything observable here and keeps the draw sequence trivial to document.
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

}  // namespace wrom
