// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wrom {

struct QuadPoint3 {
  Eigen::Vector3d x;  // unit-tet coordinates
  double w;
};

struct QuadPoint2 {
  Eigen::Vector2d x;  // unit-triangle coordinates
  double w;
};

// Rules on the unit simplex, exact for total degree == order. Weights sum to
// the simplex measure (1/6 for the tet, 1/2 for the triangle). Orders 1 and 2
// use the classical all-positive rules; 3 and 4 come from the Grundmann-Moller
// construction (degrees 3 and 5).
std::vector<QuadPoint3> tet_quadrature(int order);
std::vector<QuadPoint2> triangle_quadrature(int order);

}  // namespace wrom
