// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wrom/helmholtz.hpp"
#include "wrom/maxwell.hpp"
#include "wrom/mlp.hpp"
#include "wrom/sampling.hpp"
#include "wrom/transform.hpp"

namespace wrom {

// Training points come from the Halton sequence (optionally skipping a
// prefix); test points from a seeded Latin hypercube, so the two sets never
// collide.
struct SampleConfig {
  int train = 128;
  int test = 64;
  std::uint64_t seed = 0;  // latin hypercube seed for the test set
  int skip = 0;            // halton prefix skip for the training set
};

// Exactly one of L or tau drives the truncation; the unset one is negative.
struct PodConfig {
  bool centered = true;
  int L = 10;
  double tau = -1.0;
};

struct MlpConfig {
  int hidden_layers = 2;  // config key "D"
  int width = 30;         // config key "H"
  double lr = 5e-4;
  double beta1 = 0.8;
  double beta2 = 0.9;
  double eps = 1e-8;
  int epochs = 4000;
  std::uint64_t seed = 0;
  bool separate = false;  // two networks (real/imag) instead of one stacked
};

struct RunConfig {
  std::string problem;  // "helmholtz" or "maxwell"
  int n = 8;
  double kappa = 1.0;    // helmholtz
  double omega = 1.0;    // maxwell
  Complex mu{1.0, 0.0};
  Complex Lambda{1.0, -1.0};
  DecaySpec decay;
  SampleConfig samples;
  PodConfig pod;
  MlpConfig mlp;
  std::vector<int> eval_L;  // empty -> {0, pod.L}
  std::string output_dir = ".";
};

// Strict parse: unknown keys, wrong types, and out-of-range values all throw
// std::invalid_argument naming the offending key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Canonical form: every field materialized (defaults included), keys sorted,
// output_dir excluded so relocating a run does not invalidate artifacts.
std::string canonical_config(const RunConfig& c);
std::uint64_t config_hash(const RunConfig& c);

HelmholtzProblem make_helmholtz(const RunConfig& c);
MaxwellProblem make_maxwell(const RunConfig& c);

}  // namespace wrom
