// SPDX-License-Identifier: MIT
#include "wrom/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "wrom/rng.hpp"

namespace wrom {

namespace {

// First 32 primes; enough for any truncation dimension used here.
constexpr std::uint64_t kPrimes[] = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,  37,  41,  43,  47,  53,
    59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
constexpr std::size_t kMaxDim = sizeof(kPrimes) / sizeof(kPrimes[0]);

}  // namespace

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double value = 0.0;
  double scale = 1.0 / static_cast<double>(base);
  while (index != 0) {
    value += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= static_cast<double>(base);
  }
  return value;
}

SampleSet halton(std::size_t count, std::size_t dim, std::size_t skip) {
  if (dim == 0 || dim > kMaxDim)
    throw std::invalid_argument("halton: dim out of range");
  SampleSet set;
  set.kind = SampleKind::Halton;
  set.dim = dim;
  set.skip = skip;
  set.points.resize(count, ParamPoint(dim));
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t d = 0; d < dim; ++d)
      set.points[i][d] =
          2.0 * radical_inverse(skip + i + 1, kPrimes[d]) - 1.0;
  return set;
}

SampleSet latin_hypercube(std::size_t count, std::size_t dim,
                          std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("latin_hypercube: count == 0");
  if (dim == 0) throw std::invalid_argument("latin_hypercube: dim == 0");
  SampleSet set;
  set.kind = SampleKind::LatinHypercube;
  set.dim = dim;
  set.seed = seed;
  set.points.resize(count, ParamPoint(dim));

  SplitMix64 rng(seed);
  std::vector<std::size_t> perm(count);
  const double width = 2.0 / static_cast<double>(count);
  for (std::size_t d = 0; d < dim; ++d) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = count - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    for (std::size_t i = 0; i < count; ++i)
      set.points[i][d] =
          -1.0 + width * (static_cast<double>(perm[i]) + rng.uniform());
  }
  return set;
}

}  // namespace wrom
