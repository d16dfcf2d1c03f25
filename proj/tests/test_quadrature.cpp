// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wrom/quadrature.hpp"

using namespace wrom;

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Exact monomial integral over the unit d-simplex:
// int x^a y^b z^c = a! b! c! / (a+b+c+d)!.
double exact_tet(int a, int b, int c) {
  return factorial(a) * factorial(b) * factorial(c) /
         factorial(a + b + c + 3);
}

double exact_tri(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

double integrate_tet(const std::vector<QuadPoint3>& rule, int a, int b,
                     int c) {
  double s = 0.0;
  for (const auto& q : rule)
    s += q.w * std::pow(q.x[0], a) * std::pow(q.x[1], b) * std::pow(q.x[2], c);
  return s;
}

double integrate_tri(const std::vector<QuadPoint2>& rule, int a, int b) {
  double s = 0.0;
  for (const auto& q : rule)
    s += q.w * std::pow(q.x[0], a) * std::pow(q.x[1], b);
  return s;
}

}  // namespace

TEST_CASE("tet rule shapes and weight sums") {
  const auto r1 = tet_quadrature(1);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].x == Eigen::Vector3d(0.25, 0.25, 0.25));
  CHECK(r1[0].w == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  for (int order = 1; order <= 4; ++order) {
    double sum = 0.0;
    for (const auto& q : tet_quadrature(order)) sum += q.w;
    CHECK(sum == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  }
  CHECK(tet_quadrature(2).size() == 4);
  CHECK(tet_quadrature(3).size() == 5);
  CHECK_THROWS_AS(tet_quadrature(0), std::invalid_argument);
  CHECK_THROWS_AS(tet_quadrature(5), std::invalid_argument);
}

TEST_CASE("triangle rule weight sums") {
  for (int order = 1; order <= 4; ++order) {
    double sum = 0.0;
    for (const auto& q : triangle_quadrature(order)) sum += q.w;
    CHECK(sum == doctest::Approx(0.5).epsilon(1e-14));
  }
  CHECK_THROWS_AS(triangle_quadrature(7), std::invalid_argument);
}

TEST_CASE("tet rules integrate monomials to stated degree") {
  // int x^2 over the unit tet is 2/120 = 1/60.
  CHECK(integrate_tet(tet_quadrature(2), 2, 0, 0) ==
        doctest::Approx(1.0 / 60.0).epsilon(1e-14));

  for (int order = 1; order <= 4; ++order) {
    const auto rule = tet_quadrature(order);
    for (int a = 0; a <= order; ++a)
      for (int b = 0; a + b <= order; ++b)
        for (int c = 0; a + b + c <= order; ++c) {
          CHECK(integrate_tet(rule, a, b, c) ==
                doctest::Approx(exact_tet(a, b, c)).epsilon(1e-12));
        }
  }
}

TEST_CASE("triangle rules integrate monomials to stated degree") {
  for (int order = 1; order <= 4; ++order) {
    const auto rule = triangle_quadrature(order);
    for (int a = 0; a <= order; ++a)
      for (int b = 0; a + b <= order; ++b) {
        CHECK(integrate_tri(rule, a, b) ==
              doctest::Approx(exact_tri(a, b)).epsilon(1e-12));
      }
  }
}

TEST_CASE("default volume and boundary rules have positive weights") {
  // The assembled boundary mass must stay PSD, which the order-2 rules
  // guarantee by positivity.
  for (const auto& q : tet_quadrature(2)) CHECK(q.w > 0.0);
  for (const auto& q : triangle_quadrature(2)) CHECK(q.w > 0.0);
}

TEST_CASE("grundmann-moller order 3 reproduces the known 5-point tet rule") {
  const auto rule = tet_quadrature(3);
  double centroid_w = 0.0, corner_w = 0.0;
  for (const auto& q : rule) {
    if ((q.x - Eigen::Vector3d(0.25, 0.25, 0.25)).norm() < 1e-12)
      centroid_w += q.w;
    else
      corner_w = q.w;
  }
  CHECK(centroid_w == doctest::Approx(-2.0 / 15.0).epsilon(1e-13));
  CHECK(corner_w == doctest::Approx(3.0 / 40.0).epsilon(1e-13));
}
