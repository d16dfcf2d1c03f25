// SPDX-License-Identifier: MIT
#include "wrom/rom.hpp"

#include <cmath>
#include <string>

namespace wrom {

VectorC gpod_coefficients(const SparseMatrixC& A, const VectorC& b,
                          const ReducedBasis& basis) {
  const int L = basis.L;
  if (A.rows() != basis.V.rows() || b.size() != basis.V.rows()) {
    throw std::invalid_argument("gpod_coefficients: operator size " +
                                std::to_string(A.rows()) +
                                " does not match basis rows " +
                                std::to_string(basis.V.rows()));
  }
  if (L == 0) return VectorC(0);

  const MatrixC AV = A * basis.V;
  const MatrixC A_L = basis.V.adjoint() * AV;
  const VectorC r = basis.V.adjoint() * (b - A * basis.mean);

  VectorC c;
  try {
    c = solve_dense(A_L, r);
    // One refinement step; the reduced system inherits the full operator's
    // conditioning near resonances and plain LU can miss the residual target.
    c += solve_dense(A_L, VectorC(r - A_L * c));
  } catch (const SolverError& e) {
    throw SolverError("gpod_coefficients: reduced solve failed at L=" +
                      std::to_string(L) + ": " + e.what());
  }

  const double resid = (r - A_L * c).norm();
  const double scale = std::max(1.0, b.norm());
  if (!(resid <= 1e-10 * scale)) {
    throw SolverError("gpod_coefficients: Galerkin residual " +
                      std::to_string(resid) + " exceeds tolerance at L=" +
                      std::to_string(L));
  }
  return c;
}

VectorC gpod_solve(const SparseMatrixC& A, const VectorC& b,
                   const ReducedBasis& basis) {
  return reconstruct(gpod_coefficients(A, b, basis), basis);
}

}  // namespace wrom
