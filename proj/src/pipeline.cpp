// SPDX-License-Identifier: MIT
#include "wrom/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wrom/archive.hpp"
#include "wrom/parallel.hpp"
#include "wrom/rom.hpp"

namespace wrom {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Network seeds: one stream per truncation level, two when the real and
// imaginary parts train separately.
std::uint64_t net_seed(const MlpConfig& m, int L, bool imag_part) {
  return m.separate ? m.seed + 2 * static_cast<std::uint64_t>(L) +
                          (imag_part ? 1 : 0)
                    : m.seed + static_cast<std::uint64_t>(L);
}

}  // namespace

Pipeline::Pipeline(RunConfig config) : config_(std::move(config)) {
  hash_ = config_hash(config_);
  std::filesystem::create_directories(config_.output_dir);
}

std::string Pipeline::artifact_path(const std::string& name) const {
  return (std::filesystem::path(config_.output_dir) / name).string();
}

void Pipeline::ensure_operator() {
  if (helmholtz_ || maxwell_) return;
  if (config_.problem == "helmholtz")
    helmholtz_ = std::make_unique<HelmholtzOperator>(make_helmholtz(config_));
  else
    maxwell_ = std::make_unique<MaxwellOperator>(make_maxwell(config_));
}

int Pipeline::dof_count() {
  ensure_operator();
  return helmholtz_ ? helmholtz_->dof_count() : maxwell_->dof_count();
}

std::pair<SparseMatrixC, VectorC> Pipeline::assemble(const ParamPoint& y) {
  ensure_operator();
  return helmholtz_ ? helmholtz_->assemble(y) : maxwell_->assemble(y);
}

VectorC Pipeline::solve_hf(const ParamPoint& y) {
  ensure_operator();
  return helmholtz_ ? helmholtz_->solve_hf(y) : maxwell_->solve_hf(y);
}

StageReport Pipeline::timed(const std::string& stage,
                            const std::function<bool()>& body) {
  StageReport report;
  report.stage = stage;
  const auto t0 = Clock::now();
  try {
    report.loaded = body();
  } catch (const std::invalid_argument&) {
    throw;  // config errors keep their type for the CLI exit code
  } catch (const std::exception& e) {
    throw std::runtime_error("stage " + stage + ": " + e.what());
  }
  report.seconds = seconds_since(t0);
  return report;
}

StageReport Pipeline::run_snapshots() {
  return timed("snapshots", [&]() -> bool {
    if (train_ && test_) return true;

    const std::string train_path = artifact_path("snapshots_train.bin");
    const std::string test_path = artifact_path("snapshots_test.bin");
    if (std::filesystem::exists(train_path) &&
        std::filesystem::exists(test_path)) {
      ArchiveReader tr(train_path, hash_);
      ArchiveReader te(test_path, hash_);
      train_ = SnapshotMatrix{tr.matrix_c128("data"), tr.samples("params"),
                              hash_};
      test_ = SnapshotMatrix{te.matrix_c128("data"), te.samples("params"),
                             hash_};
      return true;
    }

    ensure_operator();
    const int J = config_.decay.J;
    SampleSet train_params =
        halton(config_.samples.train, J, config_.samples.skip);
    SampleSet test_params =
        latin_hypercube(config_.samples.test, J, config_.samples.seed);

    auto solve_set = [&](const SampleSet& params) {
      MatrixC data(dof_count(), static_cast<Eigen::Index>(params.size()));
      parallel_for(static_cast<int>(params.size()), [&](int i) {
        data.col(i) = solve_hf(params.points[static_cast<size_t>(i)]);
      });
      return SnapshotMatrix{std::move(data), params, hash_};
    };
    train_ = solve_set(train_params);
    test_ = solve_set(test_params);

    auto persist = [&](const SnapshotMatrix& snap, const std::string& path) {
      ArchiveWriter w(hash_);
      w.add_matrix("data", snap.data);
      w.add_samples("params", snap.params);
      w.save(path);
    };
    persist(*train_, train_path);
    persist(*test_, test_path);
    return false;
  });
}

StageReport Pipeline::run_pod() {
  return timed("pod", [&]() -> bool {
    if (basis_) return true;

    const std::string path = artifact_path("basis.bin");
    if (std::filesystem::exists(path)) {
      ArchiveReader r(path, hash_);
      ReducedBasis basis;
      basis.mean = r.matrix_c128("mean").col(0);
      basis.V = r.matrix_c128("V");
      basis.singular_values = r.doubles("sigma");
      basis.L = static_cast<int>(r.u64("L"));
      basis_ = std::move(basis);
      return true;
    }

    run_snapshots();
    const MatrixC& S = train_->data;
    const PodConfig& pod = config_.pod;
    if (pod.tau >= 0.0) {
      basis_ = pod.centered ? centered_pod_tolerance(S, pod.tau)
                            : uncentered_pod_tolerance(S, pod.tau);
    } else {
      basis_ = pod.centered ? centered_pod(S, pod.L)
                            : uncentered_pod(S, pod.L);
    }

    ArchiveWriter w(hash_);
    w.add_matrix("mean", MatrixC(basis_->mean));
    w.add_matrix("V", basis_->V);
    w.add_doubles("sigma", basis_->singular_values);
    w.add_u64("L", static_cast<std::uint64_t>(basis_->L));
    w.save(path);
    return false;
  });
}

std::vector<int> Pipeline::eval_levels() {
  run_pod();
  std::vector<int> levels = config_.eval_L;
  if (levels.empty()) levels = {0, basis_->L};
  for (int L : levels)
    if (L > basis_->L)
      throw std::invalid_argument("eval level " + std::to_string(L) +
                                  " exceeds basis size " +
                                  std::to_string(basis_->L));
  return levels;
}

StageReport Pipeline::run_train() {
  return timed("train", [&]() -> bool {
    run_pod();
    const std::vector<int> levels = eval_levels();
    const MlpConfig& m = config_.mlp;
    const int J = config_.decay.J;

    // Shared training inputs and full-rank coefficient targets; level L
    // trains on the first L coefficient rows.
    Eigen::MatrixXd X;
    MatrixC coeffs;
    auto materialize_targets = [&] {
      if (X.size() > 0) return;
      run_snapshots();
      const SampleSet& params = train_->params;
      X.resize(J, static_cast<Eigen::Index>(params.size()));
      for (size_t i = 0; i < params.size(); ++i)
        for (int d = 0; d < J; ++d)
          X(d, static_cast<Eigen::Index>(i)) = params.points[i][
              static_cast<size_t>(d)];
      coeffs = basis_->V.adjoint() * (train_->data.colwise() - basis_->mean);
    };

    bool all_loaded = true;
    for (int L : levels) {
      if (L == 0 || nets_.count(L)) continue;
      const std::string path =
          artifact_path("mlp_L" + std::to_string(L) + ".bin");
      if (std::filesystem::exists(path)) {
        ArchiveReader r(path, hash_);
        nets_[L] = r.mlp(m.separate ? "net_re" : "net");
        if (m.separate) nets_imag_[L] = r.mlp("net_im");
        continue;
      }

      all_loaded = false;
      materialize_targets();
      const Eigen::MatrixXd re = coeffs.topRows(L).real();
      const Eigen::MatrixXd im = coeffs.topRows(L).imag();

      TrainOptions opts;
      opts.adam = {m.lr, m.beta1, m.beta2, m.eps};
      opts.epochs = m.epochs;

      ArchiveWriter w(hash_);
      w.add_u64("L", static_cast<std::uint64_t>(L));
      if (m.separate) {
        MlpArch arch{J, m.width, m.hidden_layers, L};
        opts.seed = net_seed(m, L, false);
        TrainResult tr_re = train_mlp(arch, X, re, opts);
        opts.seed = net_seed(m, L, true);
        TrainResult tr_im = train_mlp(arch, X, im, opts);
        nets_[L] = tr_re.params;
        nets_imag_[L] = tr_im.params;
        w.add_mlp("net_re", tr_re.params);
        w.add_mlp("net_im", tr_im.params);
        w.add_doubles("loss_re", Eigen::Map<const Eigen::VectorXd>(
                                     tr_re.loss_history.data(),
                                     static_cast<Eigen::Index>(
                                         tr_re.loss_history.size())));
        w.add_doubles("loss_im", Eigen::Map<const Eigen::VectorXd>(
                                     tr_im.loss_history.data(),
                                     static_cast<Eigen::Index>(
                                         tr_im.loss_history.size())));
      } else {
        Eigen::MatrixXd Y(2 * L, X.cols());
        Y.topRows(L) = re;
        Y.bottomRows(L) = im;
        MlpArch arch{J, m.width, m.hidden_layers, 2 * L};
        opts.seed = net_seed(m, L, false);
        TrainResult tr = train_mlp(arch, X, Y, opts);
        nets_[L] = tr.params;
        w.add_mlp("net", tr.params);
        w.add_doubles("loss", Eigen::Map<const Eigen::VectorXd>(
                                  tr.loss_history.data(),
                                  static_cast<Eigen::Index>(
                                      tr.loss_history.size())));
      }
      w.save(path);
    }
    return all_loaded;
  });
}

VectorC Pipeline::predict_impl(int L, const ReducedBasis& basis_L,
                               const ParamPoint& y) const {
  if (L == 0) return basis_L.mean;
  if (!config_.mlp.separate)
    return surrogate_predict(nets_.at(L), y, basis_L);

  const int J = static_cast<int>(config_.decay.J);
  Eigen::VectorXd x(J);
  for (int d = 0; d < J; ++d) x[d] = y[static_cast<size_t>(d)];
  const Eigen::VectorXd re = mlp_forward(nets_.at(L), x);
  const Eigen::VectorXd im = mlp_forward(nets_imag_.at(L), x);
  VectorC c(L);
  for (int i = 0; i < L; ++i) c[i] = Complex(re[i], im[i]);
  return reconstruct(c, basis_L);
}

VectorC Pipeline::predict(int L, const ParamPoint& y) {
  run_train();
  if (L == 0) return basis_->mean;
  if (!nets_.count(L))
    throw std::invalid_argument("no trained network for L = " +
                                std::to_string(L));
  return predict_impl(L, truncate(*basis_, L), y);
}

StageReport Pipeline::run_eval() {
  return timed("eval", [&]() -> bool {
    run_train();
    run_snapshots();
    if (test_->params.size() == 0)
      throw std::invalid_argument("eval needs a nonempty test set");

    const std::vector<int> levels = eval_levels();
    const int rows = static_cast<int>(levels.size());
    const int cols = static_cast<int>(test_->params.size());

    ErrorReport report;
    report.L_values = levels;
    report.e_g.resize(rows, cols);
    report.e_v.resize(rows, cols);
    report.e_nn.resize(rows, cols);

    std::vector<ReducedBasis> bases;
    for (int L : levels) bases.push_back(truncate(*basis_, L));

    parallel_for(cols, [&](int i) {
      const ParamPoint& y = test_->params.points[static_cast<size_t>(i)];
      const VectorC hf = test_->data.col(i);
      auto [A, b] = assemble(y);
      for (int r = 0; r < rows; ++r) {
        const int L = levels[static_cast<size_t>(r)];
        const ReducedBasis& basis_L = bases[static_cast<size_t>(r)];
        report.e_g(r, i) = relative_error(gpod_solve(A, b, basis_L), hf);
        report.e_v(r, i) = relative_error(
            reconstruct(project(hf, basis_L), basis_L), hf);
        report.e_nn(r, i) = relative_error(predict_impl(L, basis_L, y), hf);
      }
    });

    report.mean_e_g = report.e_g.rowwise().mean();
    report.mean_e_v = report.e_v.rowwise().mean();
    report.mean_e_nn = report.e_nn.rowwise().mean();
    report_ = std::move(report);

    write_errors_csv(artifact_path("errors.csv"), *report_);
    write_points_csv(artifact_path("errors_points.csv"), *report_);
    return false;
  });
}

BenchResult Pipeline::run_bench(int queries) {
  if (queries < 1) throw std::invalid_argument("bench needs queries >= 1");
  run_train();
  int L = 0;
  for (const auto& entry : nets_) L = std::max(L, entry.first);
  if (L == 0) throw std::invalid_argument("bench needs a trained network");
  const ReducedBasis basis_L = truncate(*basis_, L);

  // Fresh parameters: continue the Halton sequence past the training block.
  SampleSet fresh = halton(queries, config_.decay.J,
                           config_.samples.skip + config_.samples.train);

  std::vector<double> t_hf, t_gpod, t_podnn;
  for (int q = 0; q < queries; ++q) {
    const ParamPoint& y = fresh.points[static_cast<size_t>(q)];

    auto t0 = Clock::now();
    VectorC u_hf = solve_hf(y);
    t_hf.push_back(seconds_since(t0));

    // The reduced route still pays full assembly each query; only the solve
    // shrinks.
    t0 = Clock::now();
    auto [A, b] = assemble(y);
    VectorC u_g = gpod_solve(A, b, basis_L);
    t_gpod.push_back(seconds_since(t0));

    t0 = Clock::now();
    VectorC u_nn = predict_impl(L, basis_L, y);
    t_podnn.push_back(seconds_since(t0));

    // Keep the optimizer from dropping the solves.
    if (!(u_hf.allFinite() && u_g.allFinite() && u_nn.allFinite()))
      throw std::runtime_error("bench: non-finite solution");
  }

  BenchResult result;
  result.queries = queries;
  result.t_hf = median(t_hf);
  result.t_gpod = median(t_gpod);
  result.t_podnn = median(t_podnn);
  result.hf_over_podnn = result.t_hf / result.t_podnn;
  result.gpod_over_podnn = result.t_gpod / result.t_podnn;
  write_bench_csv(artifact_path("bench.csv"), result);
  return result;
}

const SnapshotMatrix& Pipeline::train_snapshots() {
  run_snapshots();
  return *train_;
}

const SnapshotMatrix& Pipeline::test_snapshots() {
  run_snapshots();
  return *test_;
}

const ReducedBasis& Pipeline::basis() {
  run_pod();
  return *basis_;
}

const MlpParams& Pipeline::net(int L, bool imag_part) {
  run_train();
  const auto& pool = imag_part ? nets_imag_ : nets_;
  auto it = pool.find(L);
  if (it == pool.end())
    throw std::invalid_argument("no trained network for L = " +
                                std::to_string(L));
  return it->second;
}

const ErrorReport& Pipeline::report() {
  if (!report_) run_eval();
  return *report_;
}

ErrorReport run_pipeline(const RunConfig& config,
                         std::vector<StageReport>* reports) {
  Pipeline pipeline(config);
  StageReport stages[] = {pipeline.run_snapshots(), pipeline.run_pod(),
                          pipeline.run_train(), pipeline.run_eval()};
  if (reports)
    reports->assign(std::begin(stages), std::end(stages));
  return pipeline.report();
}

void write_errors_csv(const std::string& path, const ErrorReport& report) {
  std::string out = "L,mean_E_G,mean_E_V,mean_E_NN\n";
  for (size_t r = 0; r < report.L_values.size(); ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    out += std::to_string(report.L_values[r]) + ',' +
           fmt17(report.mean_e_g[i]) + ',' + fmt17(report.mean_e_v[i]) + ',' +
           fmt17(report.mean_e_nn[i]) + '\n';
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << out;
}

void write_points_csv(const std::string& path, const ErrorReport& report) {
  std::string out = "L,point,E_G,E_V,E_NN\n";
  for (size_t r = 0; r < report.L_values.size(); ++r) {
    const auto i = static_cast<Eigen::Index>(r);
    for (Eigen::Index p = 0; p < report.e_g.cols(); ++p)
      out += std::to_string(report.L_values[r]) + ',' + std::to_string(p) +
             ',' + fmt17(report.e_g(i, p)) + ',' + fmt17(report.e_v(i, p)) +
             ',' + fmt17(report.e_nn(i, p)) + '\n';
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << out;
}

void write_bench_csv(const std::string& path, const BenchResult& bench) {
  std::string out =
      "queries,t_HF_median_s,t_GPOD_median_s,t_PODNN_median_s,"
      "hf_over_podnn,gpod_over_podnn\n";
  out += std::to_string(bench.queries) + ',' + fmt17(bench.t_hf) + ',' +
         fmt17(bench.t_gpod) + ',' + fmt17(bench.t_podnn) + ',' +
         fmt17(bench.hf_over_podnn) + ',' + fmt17(bench.gpod_over_podnn) +
         '\n';
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << out;
}

}  // namespace wrom
