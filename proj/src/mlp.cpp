// SPDX-License-Identifier: MIT
#include "wrom/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wrom/rng.hpp"

namespace wrom {

void MlpArch::validate() const {
  if (input_dim < 1) throw std::invalid_argument("MlpArch: input_dim < 1");
  if (output_dim < 1) throw std::invalid_argument("MlpArch: output_dim < 1");
  if (hidden_layers < 0)
    throw std::invalid_argument("MlpArch: negative hidden_layers");
  if (hidden_layers > 0 && width < 1)
    throw std::invalid_argument("MlpArch: hidden layers need width >= 1");
}

namespace {

int layer_rows(const MlpArch& a, int k) {
  return k == a.hidden_layers ? a.output_dim : a.width;
}

int layer_cols(const MlpArch& a, int k) {
  return k == 0 ? a.input_dim : a.width;
}

void check_batch(const MlpParams& p, const Eigen::MatrixXd& X,
                 const Eigen::MatrixXd& Y) {
  if (X.rows() != p.arch.input_dim)
    throw std::invalid_argument("mlp: input rows " + std::to_string(X.rows()) +
                                " != " + std::to_string(p.arch.input_dim));
  if (Y.rows() != p.arch.output_dim || Y.cols() != X.cols())
    throw std::invalid_argument("mlp: target shape mismatch");
  if (X.cols() == 0) throw std::invalid_argument("mlp: empty batch");
}

}  // namespace

MlpParams init_params(const MlpArch& arch, std::uint64_t seed) {
  arch.validate();
  SplitMix64 rng(seed);
  MlpParams p;
  p.arch = arch;
  for (int k = 0; k < arch.affine_count(); ++k) {
    const int rows = layer_rows(arch, k);
    const int cols = layer_cols(arch, k);
    const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
    Eigen::MatrixXd w(rows, cols);
    // Row-major fill so the draw order matches the serialized layout.
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) w(i, j) = rng.uniform(-bound, bound);
    Eigen::VectorXd bias(rows);
    for (int i = 0; i < rows; ++i) bias[i] = rng.uniform(-bound, bound);
    p.W.push_back(std::move(w));
    p.b.push_back(std::move(bias));
  }
  return p;
}

Eigen::MatrixXd mlp_forward_batch(const MlpParams& p,
                                  const Eigen::MatrixXd& X) {
  Eigen::MatrixXd a = X;
  const int D = p.arch.hidden_layers;
  for (int k = 0; k < D; ++k)
    a = ((p.W[k] * a).colwise() + p.b[k]).array().tanh().matrix();
  return (p.W[D] * a).colwise() + p.b[D];
}

Eigen::VectorXd mlp_forward(const MlpParams& p, const Eigen::VectorXd& x) {
  return mlp_forward_batch(p, x);
}

double mse_loss(const MlpParams& p, const Eigen::MatrixXd& X,
                const Eigen::MatrixXd& Y) {
  check_batch(p, X, Y);
  return (mlp_forward_batch(p, X) - Y).squaredNorm() /
         static_cast<double>(X.cols());
}

MlpGradient mlp_gradient(const MlpParams& p, const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& Y, double* loss_out) {
  check_batch(p, X, Y);
  const int D = p.arch.hidden_layers;
  const double n = static_cast<double>(X.cols());

  // Forward sweep keeping activations; activations[k] feeds affine map k.
  std::vector<Eigen::MatrixXd> activations(D + 1);
  activations[0] = X;
  for (int k = 0; k < D; ++k)
    activations[k + 1] =
        ((p.W[k] * activations[k]).colwise() + p.b[k]).array().tanh().matrix();
  const Eigen::MatrixXd residual =
      ((p.W[D] * activations[D]).colwise() + p.b[D]) - Y;
  if (loss_out) *loss_out = residual.squaredNorm() / n;

  MlpGradient g;
  g.dW.resize(D + 1);
  g.db.resize(D + 1);
  Eigen::MatrixXd delta = (2.0 / n) * residual;
  for (int k = D; k >= 0; --k) {
    g.dW[k] = delta * activations[k].transpose();
    g.db[k] = delta.rowwise().sum();
    if (k > 0) {
      // tanh' = 1 - tanh^2, evaluated at the stored activation.
      delta = (p.W[k].transpose() * delta).array() *
              (1.0 - activations[k].array().square());
    }
  }
  return g;
}

void adam_step(MlpParams& p, const MlpGradient& g, AdamState& state,
               const AdamConfig& cfg) {
  const int layers = p.arch.affine_count();
  if (state.t == 0) {
    state.mW.clear();
    state.vW.clear();
    state.mb.clear();
    state.vb.clear();
    for (int k = 0; k < layers; ++k) {
      state.mW.push_back(Eigen::MatrixXd::Zero(p.W[k].rows(), p.W[k].cols()));
      state.vW.push_back(Eigen::MatrixXd::Zero(p.W[k].rows(), p.W[k].cols()));
      state.mb.push_back(Eigen::VectorXd::Zero(p.b[k].size()));
      state.vb.push_back(Eigen::VectorXd::Zero(p.b[k].size()));
    }
  }
  ++state.t;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (int k = 0; k < layers; ++k) {
    state.mW[k] = cfg.beta1 * state.mW[k] + (1.0 - cfg.beta1) * g.dW[k];
    state.vW[k] =
        cfg.beta2 * state.vW[k].array() +
        (1.0 - cfg.beta2) * g.dW[k].array().square();
    p.W[k].array() -= cfg.lr * (state.mW[k].array() / c1) /
                      ((state.vW[k].array() / c2).sqrt() + cfg.eps);

    state.mb[k] = cfg.beta1 * state.mb[k] + (1.0 - cfg.beta1) * g.db[k];
    state.vb[k] =
        cfg.beta2 * state.vb[k].array() +
        (1.0 - cfg.beta2) * g.db[k].array().square();
    p.b[k].array() -= cfg.lr * (state.mb[k].array() / c1) /
                      ((state.vb[k].array() / c2).sqrt() + cfg.eps);
  }
}

TrainResult train_mlp(const MlpArch& arch, const Eigen::MatrixXd& X,
                      const Eigen::MatrixXd& Y, const TrainOptions& opts,
                      const MlpParams* warm_start) {
  if (opts.epochs < 0) throw std::invalid_argument("train_mlp: epochs < 0");
  TrainResult result;
  result.params = warm_start ? *warm_start : init_params(arch, opts.seed);
  check_batch(result.params, X, Y);

  AdamState state;
  result.loss_history.reserve(static_cast<size_t>(opts.epochs));
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    MlpGradient g = mlp_gradient(result.params, X, Y);
    adam_step(result.params, g, state, opts.adam);
    const double loss = mse_loss(result.params, X, Y);
    if (!std::isfinite(loss))
      throw std::runtime_error("train_mlp: loss diverged at epoch " +
                               std::to_string(epoch));
    result.loss_history.push_back(loss);
  }
  return result;
}

VectorC surrogate_predict(const MlpParams& p, const ParamPoint& y,
                          const ReducedBasis& basis) {
  if (p.arch.output_dim != 2 * basis.L)
    throw std::invalid_argument("surrogate_predict: output dim " +
                                std::to_string(p.arch.output_dim) +
                                " != 2L = " + std::to_string(2 * basis.L));
  if (static_cast<int>(y.size()) != p.arch.input_dim)
    throw std::invalid_argument("surrogate_predict: parameter dim mismatch");
  Eigen::VectorXd x(p.arch.input_dim);
  for (int i = 0; i < p.arch.input_dim; ++i) x[i] = y[static_cast<size_t>(i)];
  const Eigen::VectorXd out = mlp_forward(p, x);
  VectorC c(basis.L);
  for (int i = 0; i < basis.L; ++i)
    c[i] = Complex(out[i], out[basis.L + i]);
  return reconstruct(c, basis);
}

}  // namespace wrom
