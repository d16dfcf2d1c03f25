// SPDX-License-Identifier: MIT
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wrom {

// One parameter vector in [-1,1]^J.
using ParamPoint = std::vector<double>;

enum class SampleKind { Halton, LatinHypercube };

struct SampleSet {
  SampleKind kind = SampleKind::Halton;
  std::size_t dim = 0;
  std::uint64_t seed = 0;  // LHS only
  std::size_t skip = 0;    // Halton only
  std::vector<ParamPoint> points;

  std::size_t size() const { return points.size(); }
};

// Digit-reversal value of index in the given base (van der Corput).
double radical_inverse(std::uint64_t index, std::uint64_t base);

// Plain Halton set in [-1,1]^dim on the first `dim` primes, no scrambling.
// Coordinate d of point i is 2*radical_inverse(skip+i+1, p_d) - 1; starting
// at index 1 avoids the all-zero first element and `skip` slices one global
// sequence into disjoint contiguous blocks.
SampleSet halton(std::size_t count, std::size_t dim, std::size_t skip = 0);

// Latin hypercube in [-1,1]^dim. Per dimension, in order: a Fisher-Yates
// shuffle of 0..count-1 (swap draws via SplitMix64::below, i = count-1 down
// to 1), then `count` jitter draws placing each point uniformly inside its
// stratum. All draws come from one SplitMix64 stream started at `seed`.
SampleSet latin_hypercube(std::size_t count, std::size_t dim,
                          std::uint64_t seed);

}  // namespace wrom
