// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <vector>

#include "wrom/pod.hpp"
#include "wrom/sampling.hpp"

namespace wrom {

// Fully connected tanh network: hidden_layers tanh-activated affine maps of
// size width, followed by a linear output map. hidden_layers = 0 degenerates
// to a single affine map (plain linear regression).
struct MlpArch {
  int input_dim = 0;
  int width = 0;
  int hidden_layers = 0;
  int output_dim = 0;

  void validate() const;
  int affine_count() const { return hidden_layers + 1; }
};

struct MlpParams {
  MlpArch arch;
  std::vector<Eigen::MatrixXd> W;  // W[k]: rows_out x rows_in
  std::vector<Eigen::VectorXd> b;
};

struct MlpGradient {
  std::vector<Eigen::MatrixXd> dW;
  std::vector<Eigen::VectorXd> db;
};

// Weights and biases drawn uniformly from +-1/sqrt(fan_in).
MlpParams init_params(const MlpArch& arch, std::uint64_t seed);

Eigen::VectorXd mlp_forward(const MlpParams& p, const Eigen::VectorXd& x);
// One sample per column.
Eigen::MatrixXd mlp_forward_batch(const MlpParams& p,
                                  const Eigen::MatrixXd& X);

// Mean over samples of the squared output-space Euclidean error.
double mse_loss(const MlpParams& p, const Eigen::MatrixXd& X,
                const Eigen::MatrixXd& Y);

// Full-batch backpropagation gradient of mse_loss. Optionally reports the
// loss from the same forward sweep.
MlpGradient mlp_gradient(const MlpParams& p, const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& Y, double* loss_out = nullptr);

struct AdamConfig {
  double lr = 5e-4;
  double beta1 = 0.8;
  double beta2 = 0.9;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<Eigen::MatrixXd> mW, vW;
  std::vector<Eigen::VectorXd> mb, vb;
  long t = 0;
};

// One bias-corrected Adam update in place. A default-constructed state is
// initialized to zero moments on first use.
void adam_step(MlpParams& p, const MlpGradient& g, AdamState& state,
               const AdamConfig& cfg);

struct TrainOptions {
  AdamConfig adam;
  int epochs = 4000;
  std::uint64_t seed = 0;
};

struct TrainResult {
  MlpParams params;
  std::vector<double> loss_history;  // one entry per epoch, post-update
};

// Deterministic full-batch Adam training. warm_start, when given, replaces
// the seeded initialization (the seed is then unused). Throws runtime_error
// with the epoch number if the loss stops being finite.
TrainResult train_mlp(const MlpArch& arch, const Eigen::MatrixXd& X,
                      const Eigen::MatrixXd& Y, const TrainOptions& opts,
                      const MlpParams* warm_start = nullptr);

// Network output [Re c; Im c] lifted through the reduced basis: V c + mean.
// The output dimension must equal 2 * basis.L.
VectorC surrogate_predict(const MlpParams& p, const ParamPoint& y,
                          const ReducedBasis& basis);

}  // namespace wrom
