// SPDX-License-Identifier: MIT
#include "wrom/pod.hpp"

#include <Eigen/SVD>
#include <iostream>
#include <sstream>

namespace wrom {

SnapshotMatrix assemble_snapshots(const HfSolver& solver,
                                  const SampleSet& params,
                                  std::uint64_t fingerprint) {
  SnapshotMatrix S;
  S.params = params;
  S.fingerprint = fingerprint;
  for (std::size_t i = 0; i < params.size(); ++i) {
    VectorC column;
    try {
      column = solver(params.points[i]);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "assemble_snapshots: solve failed at parameter index " << i
          << ": " << e.what();
      throw std::runtime_error(msg.str());
    }
    if (i == 0) S.data.resize(column.size(), params.size());
    if (column.size() != S.data.rows())
      throw std::runtime_error("assemble_snapshots: inconsistent DoF sizes");
    S.data.col(i) = column;
  }
  return S;
}

namespace {

ReducedBasis pod_impl(const MatrixC& S, int L, bool centered,
                      bool warn = true) {
  if (S.size() == 0)
    throw std::invalid_argument("centered_pod: empty snapshot matrix");
  ReducedBasis basis;
  basis.mean = centered ? S.rowwise().mean()
                        : VectorC::Zero(S.rows()).eval();
  const MatrixC centered_data = S.colwise() - basis.mean;

  Eigen::JacobiSVD<MatrixC> svd(centered_data,
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();

  // Numerical rank: values below eps-scaled sigma_1 are noise.
  const double cutoff = sv.size() > 0
                            ? sv[0] * 1e-12 *
                                  std::max(S.rows(), S.cols())
                            : 0.0;
  int rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;

  if (L > rank) {
    if (warn)
      std::cerr << "centered_pod: requested L = " << L
                << " exceeds numerical rank " << rank << ", clamping\n";
    L = rank;
  }
  if (L < 0) throw std::invalid_argument("centered_pod: negative L");

  basis.singular_values = sv.head(rank);
  basis.L = L;
  basis.V = svd.matrixU().leftCols(L);

  // Phase convention: rotate each column so its largest-magnitude entry is
  // real positive, making bases reproducible across SVD backends.
  for (int j = 0; j < L; ++j) {
    int arg = 0;
    basis.V.col(j).cwiseAbs().maxCoeff(&arg);
    const Complex v = basis.V(arg, j);
    if (std::abs(v) > 0.0) basis.V.col(j) *= std::conj(v) / std::abs(v);
  }
  return basis;
}

}  // namespace

ReducedBasis centered_pod(const MatrixC& S, int L) {
  return pod_impl(S, L, true);
}

namespace {

ReducedBasis tolerance_impl(const MatrixC& S, double tau, bool centered) {
  if (!(tau >= 0.0))
    throw std::invalid_argument("pod tolerance: tau must be >= 0");
  // Build at full rank once (quietly; hitting the rank is expected here),
  // then find the smallest satisfying L.
  ReducedBasis full =
      pod_impl(S, static_cast<int>(S.cols()), centered, false);
  const Eigen::VectorXd& sv = full.singular_values;
  const double total = sv.squaredNorm();
  int L = full.rank();
  for (int cand = 0; cand <= full.rank(); ++cand) {
    const double tail = sv.tail(sv.size() - cand).squaredNorm();
    if (tail <= tau * tau * total) {
      L = cand;
      break;
    }
  }
  return truncate(full, L);
}

}  // namespace

ReducedBasis centered_pod_tolerance(const MatrixC& S, double tau) {
  return tolerance_impl(S, tau, true);
}

ReducedBasis uncentered_pod_tolerance(const MatrixC& S, double tau) {
  return tolerance_impl(S, tau, false);
}

ReducedBasis uncentered_pod(const MatrixC& S, int L) {
  return pod_impl(S, L, false);
}

ReducedBasis truncate(const ReducedBasis& basis, int L) {
  if (L < 0) throw std::invalid_argument("truncate: negative L");
  if (L > basis.L) L = basis.L;
  ReducedBasis out;
  out.mean = basis.mean;
  out.V = basis.V.leftCols(L);
  out.singular_values = basis.singular_values;
  out.L = L;
  return out;
}

VectorC project(const VectorC& u, const ReducedBasis& basis) {
  if (u.size() != basis.mean.size())
    throw std::invalid_argument("project: dimension mismatch");
  return basis.V.adjoint() * (u - basis.mean);
}

VectorC reconstruct(const VectorC& c, const ReducedBasis& basis) {
  if (c.size() != basis.L)
    throw std::invalid_argument("reconstruct: dimension mismatch");
  return basis.V * c + basis.mean;
}

double tail_energy(const ReducedBasis& basis, int L) {
  const Eigen::VectorXd& sv = basis.singular_values;
  if (L >= sv.size()) return 0.0;
  const double total = sv.squaredNorm();
  if (total == 0.0) return 0.0;
  return sv.tail(sv.size() - L).squaredNorm() / total;
}

}  // namespace wrom
