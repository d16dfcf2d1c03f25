// SPDX-License-Identifier: MIT
//
// Command-line front end for the reduced-order pipeline. Subcommands mirror
// the offline/online stages; every invocation is driven by a JSON config.
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wrom/archive.hpp"
#include "wrom/pipeline.hpp"

namespace {

void print_stage(const wrom::StageReport& report) {
  std::printf("stage %-9s %s in %.3f s\n", report.stage.c_str(),
              report.loaded ? "loaded  " : "computed", report.seconds);
}

// --y accepts either a path to a whitespace/comma separated file or an
// inline comma separated list.
wrom::ParamPoint parse_point(const std::string& arg, int expected_dim) {
  std::string text = arg;
  if (std::ifstream file(arg); file) {
    std::stringstream ss;
    ss << file.rdbuf();
    text = ss.str();
  }
  for (char& ch : text)
    if (ch == ',' || ch == '\n' || ch == '\t') ch = ' ';

  wrom::ParamPoint y;
  std::istringstream in(text);
  double value = 0.0;
  while (in >> value) y.push_back(value);
  if (static_cast<int>(y.size()) != expected_dim)
    throw std::invalid_argument("--y needs " + std::to_string(expected_dim) +
                                " values, got " + std::to_string(y.size()));
  for (double v : y)
    if (v < -1.0 || v > 1.0)
      throw std::invalid_argument("--y entries must lie in [-1, 1]");
  return y;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin POD-NN reduced-order modeling pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  std::string y_arg;
  int queries = 100;

  CLI::App* cmd_snapshots =
      app.add_subcommand("snapshots", "solve the high-fidelity sample sets");
  CLI::App* cmd_pod =
      app.add_subcommand("pod", "build the reduced basis from snapshots");
  CLI::App* cmd_train =
      app.add_subcommand("train", "fit the coefficient networks");
  CLI::App* cmd_eval =
      app.add_subcommand("eval", "evaluate errors over the test set");
  CLI::App* cmd_bench =
      app.add_subcommand("bench", "time the online solution routes");
  CLI::App* cmd_solve =
      app.add_subcommand("solve", "one high-fidelity solve at a parameter");

  for (CLI::App* sub : {cmd_snapshots, cmd_pod, cmd_train, cmd_eval,
                        cmd_bench, cmd_solve})
    sub->add_option("--config", config_path, "JSON run configuration")
        ->required();
  cmd_bench->add_option("--queries", queries, "number of timed queries");
  cmd_solve->add_option("--y", y_arg, "parameter point, inline or file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    wrom::RunConfig config = wrom::load_config(config_path);
    wrom::Pipeline pipeline(config);

    if (cmd_snapshots->parsed()) {
      print_stage(pipeline.run_snapshots());
    } else if (cmd_pod->parsed()) {
      print_stage(pipeline.run_pod());
      const wrom::ReducedBasis& basis = pipeline.basis();
      std::printf("basis: L = %d of rank %d, top sigma = %.6g\n", basis.L,
                  basis.rank(),
                  basis.rank() > 0 ? basis.singular_values[0] : 0.0);
    } else if (cmd_train->parsed()) {
      print_stage(pipeline.run_train());
    } else if (cmd_eval->parsed()) {
      print_stage(pipeline.run_eval());
      const wrom::ErrorReport& report = pipeline.report();
      std::printf("%4s %14s %14s %14s\n", "L", "mean_E_G", "mean_E_V",
                  "mean_E_NN");
      for (size_t r = 0; r < report.L_values.size(); ++r) {
        const auto i = static_cast<Eigen::Index>(r);
        std::printf("%4d %14.6e %14.6e %14.6e\n", report.L_values[r],
                    report.mean_e_g[i], report.mean_e_v[i],
                    report.mean_e_nn[i]);
      }
      std::printf("wrote %s\n",
                  pipeline.artifact_path("errors.csv").c_str());
    } else if (cmd_bench->parsed()) {
      wrom::BenchResult bench = pipeline.run_bench(queries);
      std::printf("medians over %d queries (s): HF %.6g  G-POD %.6g  "
                  "POD-NN %.6g\n",
                  bench.queries, bench.t_hf, bench.t_gpod, bench.t_podnn);
      std::printf("speedups vs POD-NN: HF %.3g  G-POD %.3g\n",
                  bench.hf_over_podnn, bench.gpod_over_podnn);
    } else if (cmd_solve->parsed()) {
      wrom::ParamPoint y = parse_point(y_arg, config.decay.J);
      wrom::VectorC u = pipeline.solve_hf(y);
      wrom::ArchiveWriter w(pipeline.hash());
      w.add_matrix("u", wrom::MatrixC(u));
      Eigen::VectorXd yv(config.decay.J);
      for (int d = 0; d < config.decay.J; ++d)
        yv[d] = y[static_cast<size_t>(d)];
      w.add_doubles("y", yv);
      const std::string path = pipeline.artifact_path("solution.bin");
      w.save(path);
      std::printf("solved %d DoFs, |u| = %.12g, wrote %s\n",
                  static_cast<int>(u.size()), u.norm(), path.c_str());
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
