// SPDX-License-Identifier: MIT
#include "wrom/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wrom/archive.hpp"

namespace wrom {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& scope) {
  if (!j.is_object()) bad(scope + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad("unknown key " + scope + "." + it.key());
}

double get_number(const json& j, const std::string& key, double fallback,
                  const std::string& scope) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) bad(scope + "." + key + " must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, int fallback,
            const std::string& scope) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    bad(scope + "." + key + " must be an integer");
  return j[key].get<int>();
}

std::uint64_t get_u64(const json& j, const std::string& key,
                      std::uint64_t fallback, const std::string& scope) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_unsigned())
    bad(scope + "." + key + " must be a nonnegative integer");
  return j[key].get<std::uint64_t>();
}

Complex get_complex(const json& j, const std::string& key, Complex fallback,
                    const std::string& scope) {
  if (!j.contains(key)) return fallback;
  const json& v = j[key];
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  bad(scope + "." + key + " must be a number or [re, im]");
}

DecaySpec parse_decay(const json& j) {
  reject_unknown(j, {"family", "r", "nu", "l", "theta", "J"}, "decay");
  if (!j.contains("family") || !j["family"].is_string())
    bad("decay.family is required");
  DecaySpec spec;
  const std::string family = j["family"].get<std::string>();
  if (family == "algebraic") {
    spec.family = DecaySpec::Family::Algebraic;
    if (j.contains("nu") || j.contains("l"))
      bad("decay.nu/l only apply to the matern family");
  } else if (family == "matern") {
    spec.family = DecaySpec::Family::Matern;
    if (j.contains("r")) bad("decay.r only applies to the algebraic family");
  } else {
    bad("decay.family must be \"algebraic\" or \"matern\"");
  }
  spec.r = get_number(j, "r", spec.r, "decay");
  spec.nu = get_number(j, "nu", spec.nu, "decay");
  spec.l = get_number(j, "l", spec.l, "decay");
  spec.theta = get_number(j, "theta", spec.theta, "decay");
  const int truncation = get_int(j, "J", static_cast<int>(spec.J), "decay");
  if (truncation < 1) bad("decay.J must be >= 1");
  spec.J = static_cast<std::size_t>(truncation);
  spec.validate();
  return spec;
}

SampleConfig parse_samples(const json& j) {
  reject_unknown(j, {"train", "test", "seed", "skip"}, "samples");
  SampleConfig s;
  s.train = get_int(j, "train", s.train, "samples");
  s.test = get_int(j, "test", s.test, "samples");
  if (s.train < 1) bad("samples.train must be >= 1");
  if (s.test < 0) bad("samples.test must be >= 0");
  s.seed = get_u64(j, "seed", s.seed, "samples");
  s.skip = get_int(j, "skip", s.skip, "samples");
  if (s.skip < 0) bad("samples.skip must be >= 0");
  return s;
}

PodConfig parse_pod(const json& j) {
  reject_unknown(j, {"centered", "L", "tau"}, "pod");
  if (j.contains("L") == j.contains("tau"))
    bad("pod needs exactly one of L or tau");
  PodConfig p;
  if (j.contains("centered")) {
    if (!j["centered"].is_boolean()) bad("pod.centered must be a boolean");
    p.centered = j["centered"].get<bool>();
  }
  if (j.contains("L")) {
    p.L = get_int(j, "L", p.L, "pod");
    if (p.L < 0) bad("pod.L must be >= 0");
    p.tau = -1.0;
  } else {
    p.tau = get_number(j, "tau", p.tau, "pod");
    if (!(p.tau > 0.0 && p.tau <= 1.0)) bad("pod.tau must lie in (0, 1]");
    p.L = -1;
  }
  return p;
}

MlpConfig parse_mlp(const json& j) {
  reject_unknown(j,
                 {"D", "H", "lr", "beta1", "beta2", "eps", "epochs", "seed",
                  "separate"},
                 "mlp");
  MlpConfig m;
  m.hidden_layers = get_int(j, "D", m.hidden_layers, "mlp");
  m.width = get_int(j, "H", m.width, "mlp");
  if (m.hidden_layers < 0) bad("mlp.D must be >= 0");
  if (m.hidden_layers > 0 && m.width < 1) bad("mlp.H must be >= 1");
  m.lr = get_number(j, "lr", m.lr, "mlp");
  m.beta1 = get_number(j, "beta1", m.beta1, "mlp");
  m.beta2 = get_number(j, "beta2", m.beta2, "mlp");
  m.eps = get_number(j, "eps", m.eps, "mlp");
  m.epochs = get_int(j, "epochs", m.epochs, "mlp");
  m.seed = get_u64(j, "seed", m.seed, "mlp");
  if (j.contains("separate")) {
    if (!j["separate"].is_boolean()) bad("mlp.separate must be a boolean");
    m.separate = j["separate"].get<bool>();
  }
  if (!(m.lr > 0.0)) bad("mlp.lr must be > 0");
  if (!(m.beta1 >= 0.0 && m.beta1 < 1.0)) bad("mlp.beta1 must lie in [0, 1)");
  if (!(m.beta2 >= 0.0 && m.beta2 < 1.0)) bad("mlp.beta2 must lie in [0, 1)");
  if (!(m.eps > 0.0)) bad("mlp.eps must be > 0");
  if (m.epochs < 0) bad("mlp.epochs must be >= 0");
  return m;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }

  const std::set<std::string> helmholtz_keys = {
      "problem", "n",   "kappa", "decay",     "samples",
      "pod",     "mlp", "eval",  "output_dir"};
  const std::set<std::string> maxwell_keys = {
      "problem", "n",   "omega", "mu",   "lambda",
      "decay",   "samples", "pod", "mlp", "eval", "output_dir"};

  if (!j.is_object() || !j.contains("problem") || !j["problem"].is_string())
    bad("problem is required (\"helmholtz\" or \"maxwell\")");

  RunConfig c;
  c.problem = j["problem"].get<std::string>();
  if (c.problem == "helmholtz")
    reject_unknown(j, helmholtz_keys, "config");
  else if (c.problem == "maxwell")
    reject_unknown(j, maxwell_keys, "config");
  else
    bad("problem must be \"helmholtz\" or \"maxwell\"");

  c.n = get_int(j, "n", c.n, "config");
  if (c.n < 1) bad("n must be >= 1");
  c.kappa = get_number(j, "kappa", c.kappa, "config");
  if (!(c.kappa > 0.0)) bad("kappa must be > 0");
  c.omega = get_number(j, "omega", c.omega, "config");
  if (!(c.omega > 0.0)) bad("omega must be > 0");
  c.mu = get_complex(j, "mu", c.mu, "config");
  if (std::abs(c.mu) == 0.0) bad("mu must be nonzero");
  c.Lambda = get_complex(j, "lambda", c.Lambda, "config");

  if (!j.contains("decay")) bad("decay is required");
  c.decay = parse_decay(j["decay"]);
  if (j.contains("samples")) c.samples = parse_samples(j["samples"]);
  if (j.contains("pod")) c.pod = parse_pod(j["pod"]);
  if (j.contains("mlp")) c.mlp = parse_mlp(j["mlp"]);

  if (j.contains("eval")) {
    reject_unknown(j["eval"], {"L_values"}, "eval");
    if (!j["eval"].contains("L_values") || !j["eval"]["L_values"].is_array())
      bad("eval.L_values must be an array");
    for (const json& v : j["eval"]["L_values"]) {
      if (!v.is_number_integer() || v.get<int>() < 0)
        bad("eval.L_values entries must be integers >= 0");
      c.eval_L.push_back(v.get<int>());
    }
  }

  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) bad("output_dir must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const RunConfig& c) {
  json j;
  j["problem"] = c.problem;
  j["n"] = c.n;
  if (c.problem == "helmholtz") {
    j["kappa"] = c.kappa;
  } else {
    j["omega"] = c.omega;
    j["mu"] = {c.mu.real(), c.mu.imag()};
    j["lambda"] = {c.Lambda.real(), c.Lambda.imag()};
  }

  json decay;
  decay["J"] = c.decay.J;
  decay["theta"] = c.decay.theta;
  if (c.decay.family == DecaySpec::Family::Algebraic) {
    decay["family"] = "algebraic";
    decay["r"] = c.decay.r;
  } else {
    decay["family"] = "matern";
    decay["nu"] = c.decay.nu;
    decay["l"] = c.decay.l;
  }
  j["decay"] = decay;

  j["samples"] = {{"train", c.samples.train},
                  {"test", c.samples.test},
                  {"seed", c.samples.seed},
                  {"skip", c.samples.skip}};
  if (c.pod.tau >= 0.0)
    j["pod"] = {{"centered", c.pod.centered}, {"tau", c.pod.tau}};
  else
    j["pod"] = {{"centered", c.pod.centered}, {"L", c.pod.L}};
  j["mlp"] = {{"D", c.mlp.hidden_layers}, {"H", c.mlp.width},
              {"lr", c.mlp.lr},           {"beta1", c.mlp.beta1},
              {"beta2", c.mlp.beta2},     {"eps", c.mlp.eps},
              {"epochs", c.mlp.epochs},   {"seed", c.mlp.seed},
              {"separate", c.mlp.separate}};
  if (!c.eval_L.empty()) j["eval"] = {{"L_values", c.eval_L}};
  // output_dir intentionally left out: location does not change content.
  return j.dump();
}

std::uint64_t config_hash(const RunConfig& c) {
  return fnv1a(canonical_config(c));
}

HelmholtzProblem make_helmholtz(const RunConfig& c) {
  HelmholtzProblem p;
  p.kappa = c.kappa;
  p.n = c.n;
  p.spec = c.decay;
  return p;
}

MaxwellProblem make_maxwell(const RunConfig& c) {
  MaxwellProblem p;
  p.omega = c.omega;
  p.mu = c.mu;
  p.Lambda = c.Lambda;
  p.n = c.n;
  p.spec = c.decay;
  return p;
}

}  // namespace wrom
