// SPDX-License-Identifier: MIT
#include "wrom/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wrom {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

// Compositions of m into `parts` nonnegative integers, lexicographic.
void compositions(int m, int parts, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(m);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int v = 0; v <= m; ++v) {
    prefix.push_back(v);
    compositions(m - v, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

// Grundmann-Moller rule of index s on the unit d-simplex, exact for total
// degree 2s+1. Points are barycentric (2*beta+1)/(2s+d+1-2i) over the
// compositions beta of s-i; the first barycentric component belongs to the
// origin vertex and is dropped to get Cartesian coordinates.
template <int Dim, typename Point>
std::vector<Point> grundmann_moller(int s) {
  std::vector<Point> rule;
  const int d = Dim;
  for (int i = 0; i <= s; ++i) {
    const double q = static_cast<double>(2 * s + d + 1 - 2 * i);
    const double w = ((i % 2 == 0) ? 1.0 : -1.0) * std::pow(2.0, -2 * s) *
                     std::pow(q, 2 * s + 1) /
                     (factorial(i) * factorial(2 * s + d + 1 - i));
    std::vector<std::vector<int>> betas;
    std::vector<int> prefix;
    compositions(s - i, d + 1, prefix, betas);
    for (const auto& beta : betas) {
      Point p;
      for (int k = 0; k < d; ++k)
        p.x[k] = static_cast<double>(2 * beta[k + 1] + 1) / q;
      p.w = w;
      rule.push_back(p);
    }
  }
  return rule;
}

}  // namespace

std::vector<QuadPoint3> tet_quadrature(int order) {
  switch (order) {
    case 1:
      return {{{0.25, 0.25, 0.25}, 1.0 / 6.0}};
    case 2: {
      // Symmetric 4-point rule, all weights positive.
      const double a = 0.5854101966249685;  // (5 + 3 sqrt 5)/20
      const double b = 0.1381966011250105;  // (5 - sqrt 5)/20
      const double w = 1.0 / 24.0;
      return {{{b, b, b}, w}, {{a, b, b}, w}, {{b, a, b}, w}, {{b, b, a}, w}};
    }
    case 3:
      return grundmann_moller<3, QuadPoint3>(1);
    case 4:
      return grundmann_moller<3, QuadPoint3>(2);
    default:
      throw std::invalid_argument("tet_quadrature: unsupported order");
  }
}

std::vector<QuadPoint2> triangle_quadrature(int order) {
  switch (order) {
    case 1:
      return {{{1.0 / 3.0, 1.0 / 3.0}, 0.5}};
    case 2: {
      // Edge-midpoint rule, exact for quadratics.
      const double w = 1.0 / 6.0;
      return {{{0.5, 0.0}, w}, {{0.0, 0.5}, w}, {{0.5, 0.5}, w}};
    }
    case 3:
      return grundmann_moller<2, QuadPoint2>(1);
    case 4:
      return grundmann_moller<2, QuadPoint2>(2);
    default:
      throw std::invalid_argument("triangle_quadrature: unsupported order");
  }
}

}  // namespace wrom
