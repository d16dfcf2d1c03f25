// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>

#include "wrom/linalg.hpp"
#include "wrom/sampling.hpp"

namespace wrom {

struct SnapshotMatrix {
  MatrixC data;  // N_h x N_s, one DoF vector per column
  SampleSet params;
  std::uint64_t fingerprint = 0;  // hash of the generating config
};

// Centered reduced basis: u ~ V c + mean with V^dagger V = I. The singular
// value list keeps every value above the numerical rank cutoff, not just the
// first L, so tail energies stay computable after truncation.
struct ReducedBasis {
  VectorC mean;
  MatrixC V;  // N_h x L, orthonormal columns
  Eigen::VectorXd singular_values;
  int L = 0;

  int rank() const { return static_cast<int>(singular_values.size()); }
};

using HfSolver = std::function<VectorC(const ParamPoint&)>;

// Column i = solver(params.points[i]); solver failures are rethrown with the
// failing parameter index attached.
SnapshotMatrix assemble_snapshots(const HfSolver& solver,
                                  const SampleSet& params,
                                  std::uint64_t fingerprint = 0);

// SVD of the column-centered snapshot matrix, truncated to L (clamped to the
// numerical rank, with a warning on stderr). Basis columns follow the phase
// convention that the largest-magnitude entry is real positive.
ReducedBasis centered_pod(const MatrixC& S, int L);

// Tolerance rule: smallest L with sum_{j>L} sigma_j^2 <= tau^2 sum sigma_j^2.
ReducedBasis centered_pod_tolerance(const MatrixC& S, double tau);

// Same constructions with the mean forced to zero.
ReducedBasis uncentered_pod(const MatrixC& S, int L);
ReducedBasis uncentered_pod_tolerance(const MatrixC& S, double tau);

// First L columns of an existing basis (bases are nested by construction).
ReducedBasis truncate(const ReducedBasis& basis, int L);

// c = V^dagger (u - mean); u = V c + mean.
VectorC project(const VectorC& u, const ReducedBasis& basis);
VectorC reconstruct(const VectorC& c, const ReducedBasis& basis);

// Normalized tail energy sum_{j>L} sigma_j^2 / sum_j sigma_j^2.
double tail_energy(const ReducedBasis& basis, int L);

}  // namespace wrom
