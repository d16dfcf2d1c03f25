// SPDX-License-Identifier: MIT
#include "wrom/linalg.hpp"

#include <Eigen/SparseLU>
#include <sstream>

namespace wrom {

SparseMatrixC TripletAccumulator::finalize(int rows, int cols) const {
  SparseMatrixC A(rows, cols);
  A.setFromTriplets(entries.begin(), entries.end());
  A.makeCompressed();
  return A;
}

VectorC solve_linear(const SparseMatrixC& A, const VectorC& b) {
  if (A.rows() != A.cols()) throw SolverError("solve_linear: matrix not square");
  if (A.rows() != b.size())
    throw SolverError("solve_linear: dimension mismatch");

  Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success)
    throw SolverError("solve_linear: factorization failed (" +
                      lu.lastErrorMessage() + ")");

  VectorC x = lu.solve(b);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return VectorC::Zero(b.size());

  double residual = (A * x - b).norm() / bnorm;
  if (residual > 1e-10) {
    // One step of iterative refinement before giving up.
    x += lu.solve(b - A * x);
    residual = (A * x - b).norm() / bnorm;
  }
  if (!(residual <= 1e-10)) {
    std::ostringstream msg;
    msg << "solve_linear: residual contract violated, ||Ax-b||/||b|| = "
        << residual << " (matrix likely ill-conditioned near resonance)";
    throw SolverError(msg.str());
  }
  return x;
}

VectorC solve_dense(const MatrixC& A, const VectorC& b) {
  if (A.rows() != A.cols()) throw SolverError("solve_dense: matrix not square");
  if (A.rows() != b.size()) throw SolverError("solve_dense: dimension mismatch");
  if (A.rows() == 0) return VectorC(0);
  Eigen::PartialPivLU<MatrixC> lu(A);
  const VectorC x = lu.solve(b);
  if (!x.allFinite())
    throw SolverError("solve_dense: singular or badly scaled system");
  return x;
}

}  // namespace wrom
