// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wrom/config.hpp"
#include "wrom/errors.hpp"
#include "wrom/pod.hpp"

namespace wrom {

struct StageReport {
  std::string stage;
  bool loaded = false;  // artifact reused instead of recomputed
  double seconds = 0.0;
};

// Per-test-point errors for every requested L, plus their test-set means.
struct ErrorReport {
  std::vector<int> L_values;
  Eigen::MatrixXd e_g;  // L_values.size() rows, one column per test point
  Eigen::MatrixXd e_v;
  Eigen::MatrixXd e_nn;
  Eigen::VectorXd mean_e_g, mean_e_v, mean_e_nn;
};

struct BenchResult {
  int queries = 0;
  double t_hf = 0.0;     // median seconds per query, assembly + sparse solve
  double t_gpod = 0.0;   // assembly + reduced projection + dense solve
  double t_podnn = 0.0;  // network forward + lift only
  double hf_over_podnn = 0.0;
  double gpod_over_podnn = 0.0;
};

// Offline/online pipeline over one run configuration. Every stage persists
// its artifact under config.output_dir, stamped with the config hash, and is
// skipped on rerun when the artifact already matches. Stage failures are
// rethrown with the stage name prefixed.
class Pipeline {
 public:
  explicit Pipeline(RunConfig config);

  StageReport run_snapshots();
  StageReport run_pod();
  StageReport run_train();
  StageReport run_eval();
  BenchResult run_bench(int queries);

  const RunConfig& config() const { return config_; }
  std::uint64_t hash() const { return hash_; }
  std::string artifact_path(const std::string& name) const;

  // Lazily materialized state; each getter runs the owning stage if needed.
  const SnapshotMatrix& train_snapshots();
  const SnapshotMatrix& test_snapshots();
  const ReducedBasis& basis();
  const MlpParams& net(int L, bool imag_part = false);
  const ErrorReport& report();

  int dof_count();
  std::pair<SparseMatrixC, VectorC> assemble(const ParamPoint& y);
  VectorC solve_hf(const ParamPoint& y);
  // Online surrogate evaluation at truncation L (uses the trained nets).
  VectorC predict(int L, const ParamPoint& y);

  // The L list evaluated and trained for: config.eval_L or {0, basis L}.
  std::vector<int> eval_levels();

 private:
  void ensure_operator();
  StageReport timed(const std::string& stage,
                    const std::function<bool()>& body);
  // Online prediction against a pre-truncated basis; assumes nets are built.
  VectorC predict_impl(int L, const ReducedBasis& basis_L,
                       const ParamPoint& y) const;

  RunConfig config_;
  std::uint64_t hash_ = 0;

  std::unique_ptr<HelmholtzOperator> helmholtz_;
  std::unique_ptr<MaxwellOperator> maxwell_;

  std::optional<SnapshotMatrix> train_;
  std::optional<SnapshotMatrix> test_;
  std::optional<ReducedBasis> basis_;
  std::map<int, MlpParams> nets_;       // L -> net ([Re; Im] or Re half)
  std::map<int, MlpParams> nets_imag_;  // L -> Im half when mlp.separate
  std::optional<ErrorReport> report_;
};

// All offline stages plus evaluation, in order.
ErrorReport run_pipeline(const RunConfig& config,
                         std::vector<StageReport>* reports = nullptr);

// 17-significant-digit CSV writers; byte-stable across reruns.
void write_errors_csv(const std::string& path, const ErrorReport& report);
void write_points_csv(const std::string& path, const ErrorReport& report);
void write_bench_csv(const std::string& path, const BenchResult& bench);

}  // namespace wrom
