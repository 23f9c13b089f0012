// Copyright 2026 The temperlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "temperlab/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "temperlab/error.hpp"

namespace temperlab::cli {

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string s = "invalid config:";
  for (const auto& i : issues) s += " [" + i.field + "] " + i.message + ";";
  return s;
}

class Reader {
 public:
  std::vector<ConfigIssue> issues;

  void known(const YAML::Node& node, const std::string& path, std::initializer_list<const char*> keys) {
    if (!node) return;
    if (!node.IsMap()) {
      issues.push_back({path, "expected a mapping"});
      return;
    }
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : node) {
      const std::string k = kv.first.as<std::string>();
      if (!allowed.count(k)) issues.push_back({join(path, k), "unknown key"});
    }
  }

  template <class T>
  void get(const YAML::Node& node, const std::string& path, const char* key, T& out) {
    if (!node || !node[key]) return;
    try {
      out = node[key].as<T>();
    } catch (const YAML::Exception&) {
      issues.push_back({join(path, key), "wrong type"});
    }
  }

  template <class T>
  void get(const YAML::Node& node, const std::string& path, const char* key, std::optional<T>& out) {
    T v{};
    if (!node || !node[key]) return;
    get(node, path, key, v);
    out = v;
  }

  // Scalar or list of scalars.
  template <class T>
  void get_list(const YAML::Node& node, const std::string& path, const char* key, std::vector<T>& out) {
    if (!node || !node[key]) return;
    const YAML::Node v = node[key];
    try {
      out.clear();
      if (v.IsSequence()) {
        for (const auto& e : v) out.push_back(e.as<T>());
      } else {
        out.push_back(v.as<T>());
      }
    } catch (const YAML::Exception&) {
      issues.push_back({join(path, key), "wrong type"});
    }
  }

  void get_grid_int(const YAML::Node& node, const std::string& path, const char* key, GridInt& out) {
    if (!node || !node[key]) return;
    const YAML::Node v = node[key];
    if (v.IsScalar() && v.Scalar() == "n") {
      out = {0, true};
      return;
    }
    try {
      out = {v.as<int>(), false};
    } catch (const YAML::Exception&) {
      issues.push_back({join(path, key), "expected an integer or \"n\""});
    }
  }

  void get_n_grid(const YAML::Node& node, const std::string& path, std::vector<int>& out) {
    if (!node || !node["n"]) return;
    const YAML::Node v = node["n"];
    try {
      if (v.IsMap()) {
        const int from = v["from"].as<int>();
        const int to = v["to"].as<int>();
        const int step = v["step"] ? v["step"].as<int>() : 1;
        if (step <= 0 || to < from) {
          issues.push_back({join(path, "n"), "range needs from <= to and step > 0"});
          return;
        }
        out.clear();
        for (int n = from; n <= to; n += step) out.push_back(n);
      } else {
        get_list(node, path, "n", out);
      }
    } catch (const YAML::Exception&) {
      issues.push_back({join(path, "n"), "expected an integer, a list, or {from, to, step}"});
    }
  }

  template <class E, class Parse>
  void get_enum(const YAML::Node& node, const std::string& path, const char* key, E& out, Parse parse) {
    std::string s;
    if (!node || !node[key]) return;
    get(node, path, key, s);
    try {
      out = parse(s);
    } catch (const Error& e) {
      issues.push_back({join(path, key), e.what()});
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
};

ChainKind parse_chain_kind(const std::string& s) {
  if (s == "level" || s == "metropolis") return ChainKind::kLevel;
  if (s == "tempering") return ChainKind::kTempering;
  if (s == "swap") return ChainKind::kSwap;
  if (s == "trace") return ChainKind::kTrace;
  if (s == "flattened") return ChainKind::kFlattened;
  throw Error(ErrorCode::kInvalidArgument, "unknown chain kind '" + s + "'");
}

FitKind parse_fit(const std::string& s) {
  if (s == "exp_in_n" || s == "EXP_IN_N") return FitKind::kExpInN;
  if (s == "poly_in_n" || s == "POLY_IN_N") return FitKind::kPolyInN;
  throw Error(ErrorCode::kInvalidArgument, "unknown fit '" + s + "'");
}

EigenMethod parse_method(const std::string& s) {
  if (s == "auto") return EigenMethod::kAuto;
  if (s == "dense") return EigenMethod::kDense;
  if (s == "iterative") return EigenMethod::kIterative;
  throw Error(ErrorCode::kInvalidArgument, "unknown eigen method '" + s + "'");
}

bool is_potts_family(const std::string& f) { return f == "potts" || f == "ising"; }

}  // namespace

const char* chain_kind_name(ChainKind k) {
  switch (k) {
    case ChainKind::kLevel: return "level";
    case ChainKind::kTempering: return "tempering";
    case ChainKind::kSwap: return "swap";
    case ChainKind::kTrace: return "trace";
    case ChainKind::kFlattened: return "flattened";
  }
  return "level";
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

ExperimentConfig parse_config(const std::string& text, std::vector<ConfigIssue>* issues) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError({{"", std::string("YAML syntax: ") + e.what()}});
  }
  ExperimentConfig c;
  if (!root || root.IsNull()) return c;
  Reader r;
  r.known(root, "", {"model", "ladder", "chain", "analysis", "simulate", "output", "seed", "threads"});
  r.get(root, "", "seed", c.seed);
  r.get(root, "", "threads", c.threads);

  const YAML::Node m = root["model"];
  r.known(m, "model", {"family", "q", "n", "mu", "beta", "beta_scale", "h", "fields", "C", "N", "N_prime"});
  r.get(m, "model", "family", c.model.family);
  if (c.model.family == "ising") c.model.q = 2;
  r.get(m, "model", "q", c.model.q);
  r.get_n_grid(m, "model", c.model.n_grid);
  r.get(m, "model", "mu", c.model.mu);
  r.get(m, "model", "beta", c.model.beta);
  r.get(m, "model", "beta_scale", c.model.beta_scale);
  r.get(m, "model", "h", c.model.h);
  r.get_list(m, "model", "fields", c.model.fields);
  r.get(m, "model", "C", c.model.C);
  r.get_grid_int(m, "model", "N", c.model.N);
  r.get_grid_int(m, "model", "N_prime", c.model.N_prime);

  const YAML::Node l = root["ladder"];
  r.known(l, "ladder", {"M", "kind", "exponents"});
  r.get_grid_int(l, "ladder", "M", c.ladder.M);
  if (l && l["kind"]) {
    std::vector<std::string> kinds;
    r.get_list(l, "ladder", "kind", kinds);
    c.ladder.kinds.clear();
    for (const auto& k : kinds) {
      try {
        c.ladder.kinds.push_back(parse_ladder_kind(k));
      } catch (const Error& e) {
        r.issues.push_back({"ladder.kind", e.what()});
      }
    }
  }
  if (l && l["exponents"]) {
    std::vector<double> e;
    r.get_list(l, "ladder", "exponents", e);
    c.ladder.exponents = e;
  }

  const YAML::Node ch = root["chain"];
  r.known(ch, "chain", {"kind", "restriction", "level", "swap_moves", "dump"});
  r.get_enum(ch, "chain", "kind", c.chain.kind, parse_chain_kind);
  r.get_enum(ch, "chain", "restriction", c.chain.restriction, parse_restriction);
  r.get(ch, "chain", "level", c.chain.level);
  r.get(ch, "chain", "swap_moves", c.chain.swap_moves);
  r.get(ch, "chain", "dump", c.chain.dump);

  const YAML::Node a = root["analysis"];
  r.known(a, "analysis", {"targets", "cut_families", "fits", "tolerance", "method", "dense_threshold", "krylov_dim",
                          "max_restarts", "epsilon", "state_cap", "mixing_max_steps", "mixing_exact_threshold",
                          "items", "slope_n", "distributions"});
  r.get_list(a, "analysis", "targets", c.analysis.targets);
  r.get_list(a, "analysis", "cut_families", c.analysis.cut_families);
  if (a && a["fits"]) {
    std::vector<std::string> fits;
    r.get_list(a, "analysis", "fits", fits);
    c.analysis.fits.clear();
    for (const auto& f : fits) {
      try {
        c.analysis.fits.push_back(parse_fit(f));
      } catch (const Error& e) {
        r.issues.push_back({"analysis.fits", e.what()});
      }
    }
  }
  r.get(a, "analysis", "tolerance", c.analysis.spectral.tol);
  r.get_enum(a, "analysis", "method", c.analysis.spectral.method, parse_method);
  r.get(a, "analysis", "dense_threshold", c.analysis.spectral.dense_threshold);
  r.get(a, "analysis", "krylov_dim", c.analysis.spectral.krylov_dim);
  r.get(a, "analysis", "max_restarts", c.analysis.spectral.max_restarts);
  r.get(a, "analysis", "epsilon", c.analysis.epsilon);
  r.get(a, "analysis", "state_cap", c.analysis.state_cap);
  r.get(a, "analysis", "mixing_max_steps", c.analysis.mixing.max_steps);
  r.get(a, "analysis", "mixing_exact_threshold", c.analysis.mixing.exact_threshold);
  r.get_list(a, "analysis", "items", c.analysis.items);
  if (a && a["slope_n"]) {
    std::vector<int> s;
    r.get_list(a, "analysis", "slope_n", s);
    if (s.size() == 2) {
      c.analysis.slope_n_lo = s[0];
      c.analysis.slope_n_hi = s[1];
    } else {
      r.issues.push_back({"analysis.slope_n", "expected [n_lo, n_hi]"});
    }
  }
  r.get(a, "analysis", "distributions", c.analysis.distributions);

  const YAML::Node s = root["simulate"];
  r.known(s, "simulate", {"steps", "burn_in", "stride", "recount_every", "start", "color", "replicas"});
  r.get(s, "simulate", "steps", c.simulate.steps);
  r.get(s, "simulate", "burn_in", c.simulate.burn_in);
  r.get(s, "simulate", "stride", c.simulate.stride);
  r.get(s, "simulate", "recount_every", c.simulate.recount_every);
  r.get_enum(s, "simulate", "start", c.simulate.start, parse_start_kind);
  r.get(s, "simulate", "color", c.simulate.color);
  r.get(s, "simulate", "replicas", c.simulate.replicas);

  const YAML::Node o = root["output"];
  r.known(o, "output", {"path", "format", "histogram", "timestamp"});
  r.get(o, "output", "path", c.output.path);
  r.get(o, "output", "format", c.output.format);
  r.get(o, "output", "histogram", c.output.histogram);
  r.get(o, "output", "timestamp", c.output.timestamp);

  if (issues) {
    issues->insert(issues->end(), r.issues.begin(), r.issues.end());
  } else if (!r.issues.empty()) {
    throw ConfigError(std::move(r.issues));
  }
  return c;
}

ExperimentConfig load_config(const std::string& path, std::vector<ConfigIssue>* issues) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{"--config", "cannot read '" + path + "'"}});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), issues);
}

std::vector<ConfigIssue> validate_config(const ExperimentConfig& c, const std::string& command) {
  std::vector<ConfigIssue> out;
  const auto bad = [&](std::string field, std::string msg) { out.push_back({std::move(field), std::move(msg)}); };
  const auto& m = c.model;
  const bool potts = is_potts_family(m.family);
  const bool needs_twelve = command == "verify" || command == "compare-rgb" ||
                            c.chain.kind == ChainKind::kFlattened ||
                            std::count(c.analysis.cut_families.begin(), c.analysis.cut_families.end(), "lambda_min") > 0;

  if (m.family != "potts" && m.family != "ising" && m.family != "exp") bad("model.family", "expected potts, ising or exp");
  if (m.family == "ising" && m.q != 2) bad("model.q", "ising has q = 2");
  if (m.q < 2) bad("model.q", "q must be at least 2");
  if (m.n_grid.empty()) bad("model.n", "empty grid");
  for (int n : m.n_grid) {
    if (n < 1) bad("model.n", "n = " + std::to_string(n) + " must be positive");
    if (needs_twelve && n % 12 != 0) bad("model.n", "n = " + std::to_string(n) + " is not a multiple of 12");
  }
  if (potts) {
    const int given = m.mu.has_value() + m.beta.has_value() + m.beta_scale.has_value();
    if (given != 1 && command != "verify") bad("model", "give exactly one of mu, beta, beta_scale");
    if ((m.mu && *m.mu < 0) || (m.beta && *m.beta < 0) || (m.beta_scale && *m.beta_scale < 0))
      bad("model", "inverse temperature must be non-negative");
    if (m.beta_scale && m.q > 3) bad("model.beta_scale", "critical beta is known for q = 2 and q = 3 only");
    if (!m.fields.empty() && static_cast<int>(m.fields.size()) != m.q) bad("model.fields", "need q entries");
    if (m.family == "ising" && !m.fields.empty()) bad("model.fields", "use h for the ising field");
  } else if (m.family == "exp") {
    if (!(m.C > 1.0)) bad("model.C", "C must exceed 1");
    if (!m.N.tied && m.N.value < 1) bad("model.N", "N must be positive");
    if (!m.N_prime.tied && m.N_prime.value < 1) bad("model.N_prime", "N_prime must be positive");
  }

  if (!c.ladder.M.tied && c.ladder.M.value < 0) bad("ladder.M", "M must be non-negative");
  if (c.ladder.kinds.empty()) bad("ladder.kind", "no ladder kind");
  for (LadderKind k : c.ladder.kinds)
    if (k == LadderKind::kDampened && !potts) bad("ladder.kind", "dampened ladders need a count structure (potts/ising)");
  if (c.ladder.exponents) {
    const auto& e = *c.ladder.exponents;
    if (c.ladder.M.tied || static_cast<int>(e.size()) != c.ladder.M.value + 1)
      bad("ladder.exponents", "need a fixed M and M + 1 exponents");
    if (!e.empty() && (e.front() != 0.0 || e.back() != 1.0 || !std::is_sorted(e.begin(), e.end())))
      bad("ladder.exponents", "must be non-decreasing from 0 to 1");
  }

  const ChainKind k = c.chain.kind;
  if (c.chain.restriction == Restriction::kRgb) {
    if (m.family != "potts" || m.q != 3) bad("chain.restriction", "rgb needs the 3-state potts model");
    if (!m.mu) {
      bad("chain.restriction", "rgb experiments are parametrized by mu");
    } else {
      try {
        asymptotic_lambda_min(*m.mu);
      } catch (const Error& e) {
        bad("model.mu", std::string("rgb: ") + e.what());
      }
    }
  }
  if (k == ChainKind::kTrace && m.family == "potts") bad("chain.kind", "trace projection needs an ising or exp ladder");
  if (k == ChainKind::kTrace && !c.ladder.M.tied && c.ladder.M.value + 1 > 20) bad("ladder.M", "trace needs M + 1 <= 20");
  if (k == ChainKind::kFlattened && (m.family != "potts" || m.q != 3 || !m.mu))
    bad("chain.kind", "flattened needs the 3-state potts model with mu");
  if (!c.ladder.M.tied && c.chain.level > c.ladder.M.value) bad("chain.level", "level above M");
  if (c.chain.level < -1) bad("chain.level", "level must be -1 (top) or in [0, M]");

  for (const auto& t : c.analysis.targets)
    if (t != "gap" && t != "conductance" && t != "tv") bad("analysis.targets", "unknown target '" + t + "'");
  for (const auto& f : c.analysis.cut_families)
    if (f != "sigma_1" && f != "trace_weight" && f != "lambda_min" && f != "half" && f != "exhaustive")
      bad("analysis.cut_families", "unknown cut family '" + f + "'");
  if (!(c.analysis.epsilon > 0.0 && c.analysis.epsilon < 0.5)) bad("analysis.epsilon", "must be in (0, 1/2)");
  if (!(c.analysis.spectral.tol > 0.0)) bad("analysis.tolerance", "must be positive");
  for (const auto& it : c.analysis.items)
    if (it.size() != 1 || it[0] < 'a' || it[0] > 'f') bad("analysis.items", "items are a..f");
  if (command == "verify" && c.analysis.slope_n_hi <= c.analysis.slope_n_lo)
    bad("analysis.slope_n", "need n_lo < n_hi");

  if (command == "simulate") {
    if (!potts) bad("model.family", "Monte Carlo runs on potts/ising models");
    if (k != ChainKind::kLevel && k != ChainKind::kTempering && k != ChainKind::kSwap)
      bad("chain.kind", "simulate supports level, tempering and swap");
    if (c.chain.restriction != Restriction::kNone) bad("chain.restriction", "simulate runs on the full space");
    if (!(c.simulate.steps > c.simulate.burn_in && c.simulate.burn_in >= 0)) bad("simulate.steps", "need steps > burn_in >= 0");
    if (c.simulate.stride < 1) bad("simulate.stride", "must be positive");
    if (c.simulate.replicas < 1) bad("simulate.replicas", "must be positive");
    if (c.simulate.start == StartKind::kOrdered && (c.simulate.color < 0 || c.simulate.color >= m.q))
      bad("simulate.color", "color out of range");
  }
  if (command == "verify" || command == "compare-rgb") {
    if (m.family != "potts" || m.q != 3) bad("model", command + " needs the 3-state potts model");
  }
  if (command == "compare-rgb" && !m.mu) bad("model.mu", "compare-rgb is parametrized by mu");
  if (command == "compare-rgb" && m.mu) {
    try {
      asymptotic_lambda_min(*m.mu);
    } catch (const Error& e) {
      bad("model.mu", e.what());
    }
  }
  if (c.output.format != "csv" && c.output.format != "json") bad("output.format", "expected csv or json");
  if (c.threads < 1) bad("threads", "must be positive");
  return out;
}

double beta_at(const ExperimentConfig& c, int n) {
  const auto& m = c.model;
  if (m.mu) return *m.mu / n;
  if (m.beta) return *m.beta;
  if (m.beta_scale) return *m.beta_scale * (m.q == 2 ? ising_critical_beta(n) : potts3_critical_beta(n));
  return 0.0;
}

double mu_at(const ExperimentConfig& c, int n) { return c.model.mu ? *c.model.mu : beta_at(c, n) * n; }

Model model_at(const ExperimentConfig& c, int n) {
  const auto& m = c.model;
  if (m.family == "exp") return ExpModel{m.C, m.N.at(n), m.N_prime.at(n)};
  if (m.family == "ising") return ising_model(n, beta_at(c, n), m.h);
  if (m.mu) return PottsModel::with_mu(m.q, n, *m.mu, m.fields);
  return PottsModel::with_beta(m.q, n, beta_at(c, n), m.fields);
}

Ladder ladder_at(const ExperimentConfig& c, int n, LadderKind kind) {
  LadderOptions opt;
  opt.state_cap = c.analysis.state_cap;
  return make_ladder(model_at(c, n), c.ladder.M.at(n), kind, c.ladder.exponents, opt);
}

}  // namespace temperlab::cli
