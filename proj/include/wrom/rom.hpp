// SPDX-License-Identifier: MIT
#pragma once

#include "wrom/linalg.hpp"
#include "wrom/pod.hpp"

namespace wrom {

// Reduced Galerkin coefficients: solves V^dagger A V c = V^dagger (b - A mean)
// densely. The full-order (A, b) must be assembled per query; the problems
// here have no affine parameter decomposition to exploit. Enforces Galerkin
// orthogonality ||V^dagger (b - A (V c + mean))|| <= 1e-10 ||b|| and throws
// SolverError (reporting L) otherwise.
VectorC gpod_coefficients(const SparseMatrixC& A, const VectorC& b,
                          const ReducedBasis& basis);

// Lifted G-POD solution V c + mean.
VectorC gpod_solve(const SparseMatrixC& A, const VectorC& b,
                   const ReducedBasis& basis);

}  // namespace wrom
