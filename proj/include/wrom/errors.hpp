// SPDX-License-Identifier: MIT
#pragma once

#include "wrom/linalg.hpp"

namespace wrom {

// Relative Euclidean error on DoF vectors, ||approx - ref|| / ||ref||.
// Falls back to the absolute error when the reference vanishes.
double relative_error(const VectorC& approx, const VectorC& ref);

// Per-query errors of the three solution routes against the high-fidelity
// solution: Galerkin ROM, best approximation in the basis, and the network
// surrogate. E_V <= E_G and E_V <= E_NN hold by optimality of the orthogonal
// projection.
struct ErrorSample {
  double e_g = 0.0;
  double e_v = 0.0;
  double e_nn = 0.0;
};

}  // namespace wrom
