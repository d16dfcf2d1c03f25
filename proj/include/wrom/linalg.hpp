// SPDX-License-Identifier: MIT
#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wrom {

using Complex = std::complex<double>;
using SparseMatrixC = Eigen::SparseMatrix<Complex>;
using VectorC = Eigen::VectorXcd;
using MatrixC = Eigen::MatrixXcd;

enum class DofTag { NodalH1, EdgeHcurl };

struct DofVector {
  DofTag tag = DofTag::NodalH1;
  VectorC values;
};

// Deterministic coordinate-list accumulator. finalize() compresses duplicates
// in a fixed order, so assembled matrices are bit-reproducible.
struct TripletAccumulator {
  std::vector<Eigen::Triplet<Complex>> entries;

  void add(int row, int col, Complex value) {
    entries.emplace_back(row, col, value);
  }
  SparseMatrixC finalize(int rows, int cols) const;
};

struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Sparse complex LU (COLAMD ordering) with one step of iterative refinement.
// Guarantees ||Ax-b||/||b|| <= 1e-10 or throws SolverError carrying the
// achieved residual as a conditioning diagnostic.
VectorC solve_linear(const SparseMatrixC& A, const VectorC& b);

// Dense LU solve used as an independent cross-check in tests and for the
// reduced systems; pivoted, throws SolverError on singularity.
VectorC solve_dense(const MatrixC& A, const VectorC& b);

}  // namespace wrom
