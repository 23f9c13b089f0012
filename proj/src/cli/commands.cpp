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

#include "temperlab/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

#include "temperlab/cli/verify.hpp"
#include "temperlab/error.hpp"
#include "temperlab/lumped.hpp"

namespace temperlab::cli {

namespace {

using Clock = std::chrono::steady_clock;

// Runs f(i) for i < count on up to `threads` workers; f must not throw.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& f) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

std::string error_text(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(error_code_name(err->code())) + ": " + e.what();
  return e.what();
}

double seconds_since(Clock::time_point t0, const RunFlags& flags) {
  if (!flags.timestamp) return 0.0;
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double pi_min(const LumpedChain& c) {
  double lo = std::numeric_limits<double>::infinity();
  for (double p : stationary(c, 1e-8)) lo = std::min(lo, p);
  return lo;
}

bool has(const std::vector<std::string>& v, const char* s) { return std::find(v.begin(), v.end(), s) != v.end(); }

struct GridPoint {
  int n;
  LadderKind kind;
};

std::vector<GridPoint> grid(const ExperimentConfig& c) {
  std::vector<GridPoint> g;
  for (LadderKind k : c.ladder.kinds)
    for (int n : c.model.n_grid) g.push_back({n, k});
  return g;
}

void set_point_columns(Table& t, const ExperimentConfig& c, const GridPoint& p) {
  t.set("family", c.model.family);
  t.set("q", static_cast<long long>(c.model.family == "exp" ? 0 : c.model.q));
  t.set("n", static_cast<long long>(p.n));
  if (c.model.family != "exp") {
    t.set("mu", mu_at(c, p.n));
    t.set("beta", beta_at(c, p.n));
  }
  t.set("M", static_cast<long long>(c.ladder.M.at(p.n)));
  t.set("ladder_kind", std::string(ladder_kind_name(p.kind)));
  t.set("restriction", std::string(restriction_name(c.chain.restriction)));
  t.set("chain_kind", std::string(chain_kind_name(c.chain.kind)));
}

void maybe_dump(const ExperimentConfig& c, const LumpedChain& chain, int n, LadderKind kind) {
  if (c.chain.dump.empty()) return;
  const std::string path = dump_path(c, n, kind);
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path);
  require(static_cast<bool>(out), ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  write_sparse_triplets(chain, out);
}

std::vector<std::string> point_columns() {
  return {"record", "family", "q", "n", "mu", "beta", "M", "ladder_kind", "restriction", "chain_kind", "states"};
}

std::vector<std::string> concat(std::vector<std::string> a, std::initializer_list<const char*> b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool in_half_cut(std::span<const int> label, int q, int n) {
  for (int m = 0; m < q; ++m)
    if (2 * label[m] > n) return false;
  return true;
}

}  // namespace

std::string dump_path(const ExperimentConfig& c, int n, LadderKind kind) {
  std::string p = c.chain.dump;
  bool placeholder = false;
  for (const auto& [key, value] : {std::pair<std::string, std::string>{"{n}", std::to_string(n)},
                                   std::pair<std::string, std::string>{"{ladder}", ladder_kind_name(kind)}}) {
    for (auto pos = p.find(key); pos != std::string::npos; pos = p.find(key)) {
      p.replace(pos, key.size(), value);
      placeholder = true;
    }
  }
  if (!placeholder && (c.model.n_grid.size() > 1 || c.ladder.kinds.size() > 1)) {
    const std::string suffix = "-n" + std::to_string(n) + "-" + ladder_kind_name(kind);
    const auto dot = p.find_last_of('.');
    const auto slash = p.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
      p.insert(dot, suffix);
    else
      p += suffix;
  }
  return p;
}

LumpedChain build_configured_chain(const ExperimentConfig& c, int n, LadderKind kind) {
  BuildOptions opt;
  opt.state_cap = c.analysis.state_cap;
  opt.swap_moves = c.chain.swap_moves;
  if (c.chain.kind == ChainKind::kFlattened)
    return build_flattened_level_chain(std::get<PottsModel>(model_at(c, n)), true, opt);
  const Ladder ladder = ladder_at(c, n, kind);
  switch (c.chain.kind) {
    case ChainKind::kLevel:
      return build_level_chain(ladder, c.chain.level < 0 ? ladder.M() : c.chain.level, c.chain.restriction, opt);
    case ChainKind::kTempering: return build_tempering_chain(ladder, c.chain.restriction, opt);
    case ChainKind::kSwap: return build_swap_chain(ladder, c.chain.restriction, opt);
    case ChainKind::kTrace: return build_trace_projection(ladder, trace_threshold(ladder));
    case ChainKind::kFlattened: break;
  }
  throw Error(ErrorCode::kUnsupportedKind, "unknown chain kind");
}

CommandOutput cmd_verify(const ExperimentConfig& c, const RunFlags& flags) {
  SuiteOptions o;
  o.mu = c.model.mu.value_or(2.9);
  o.M = c.ladder.M.tied ? -1 : c.ladder.M.value;
  o.items = c.analysis.items;
  o.slope_n_lo = c.analysis.slope_n_lo;
  o.slope_n_hi = c.analysis.slope_n_hi;
  std::vector<std::vector<VerifyItem>> per_n(c.model.n_grid.size());
  parallel_for(per_n.size(), c.threads, [&](std::size_t i) {
    SuiteOptions one = o;
    one.n_grid = {c.model.n_grid[i]};
    per_n[i] = run_lemma_suite(one);
  });

  CommandOutput out;
  Table t("verify", 1, {"n", "item", "name", "status", "error", "key", "value"});
  for (const auto& items : per_n) {
    for (const auto& it : items) {
      out.checks_passed = out.checks_passed && it.pass;
      const auto base = [&] {
        t.add_row();
        t.set("n", static_cast<long long>(it.n));
        t.set("item", it.id);
        t.set("name", it.name);
        t.set("status", std::string(it.pass ? "PASS" : "FAIL"));
        if (!it.error.empty()) t.set("error", it.error);
      };
      if (it.values.empty()) base();
      for (const auto& [k, v] : it.values) {
        base();
        t.set("key", k);
        t.set("value", v);
      }
    }
  }
  (void)flags;
  out.table = std::move(t);
  return out;
}

CommandOutput cmd_scan_gap(const ExperimentConfig& c, const RunFlags& flags) {
  const bool want_tv = has(c.analysis.targets, "tv");
  Table t("scan-gap", 1,
          concat(point_columns(), {"gap", "lambda1_abs", "method", "residual", "converged", "tau", "tau_status",
                                   "tau_gap_lower", "tau_gap_upper", "seconds", "fit_kind", "slope", "intercept",
                                   "max_residual", "fit_points", "error"}));
  const auto pts = grid(c);
  struct Result {
    std::optional<SpectralReport> gap;
    std::optional<MixingTime> tau;
    MixingBounds bounds;
    std::size_t states = 0;
    double seconds = 0.0;
    std::string error;
  };
  std::vector<Result> res(pts.size());
  parallel_for(pts.size(), c.threads, [&](std::size_t i) {
    const auto t0 = Clock::now();
    try {
      const LumpedChain chain = build_configured_chain(c, pts[i].n, pts[i].kind);
      maybe_dump(c, chain, pts[i].n, pts[i].kind);
      res[i].states = chain.size();
      res[i].gap = spectral_gap(chain, c.analysis.spectral);
      if (want_tv) {
        res[i].tau = tv_mixing_time(chain, c.analysis.epsilon, c.analysis.mixing);
        res[i].bounds = gap_mixing_bounds(res[i].gap->gap, pi_min(chain), c.analysis.epsilon);
      }
    } catch (const std::exception& e) {
      res[i].error = error_text(e);
    }
    res[i].seconds = seconds_since(t0, flags);
  });

  CommandOutput out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    t.add_row();
    t.set("record", std::string("point"));
    set_point_columns(t, c, pts[i]);
    const Result& r = res[i];
    if (r.states) t.set("states", static_cast<long long>(r.states));
    if (r.gap) {
      t.set("gap", r.gap->gap);
      t.set("lambda1_abs", r.gap->lambda1_abs);
      t.set("method", std::string(eigen_method_name(r.gap->method)));
      t.set("residual", r.gap->residual);
      t.set("converged", static_cast<long long>(r.gap->converged));
    }
    if (r.tau) {
      t.set("tau", static_cast<long long>(r.tau->t));
      t.set("tau_status", std::string(r.tau->lower_bound ? "lower_bound" : r.tau->heuristic ? "heuristic" : "exact"));
      t.set("tau_gap_lower", r.bounds.lower);
      t.set("tau_gap_upper", r.bounds.upper);
    }
    t.set("seconds", r.seconds);
    if (!r.error.empty()) {
      t.set("error", r.error);
      out.complete = false;
    }
  }
  for (LadderKind k : c.ladder.kinds) {
    std::vector<std::pair<double, double>> xy;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i].kind == k && res[i].gap && res[i].gap->gap > 0.0) xy.emplace_back(pts[i].n, res[i].gap->gap);
    for (FitKind f : c.analysis.fits) {
      t.add_row();
      t.set("record", std::string("fit"));
      t.set("family", c.model.family);
      t.set("ladder_kind", std::string(ladder_kind_name(k)));
      t.set("restriction", std::string(restriction_name(c.chain.restriction)));
      t.set("chain_kind", std::string(chain_kind_name(c.chain.kind)));
      t.set("fit_kind", std::string(fit_kind_name(f)));
      t.set("fit_points", static_cast<long long>(xy.size()));
      try {
        const ScalingFit s = fit_decay(xy, f);
        t.set("slope", s.slope);
        t.set("intercept", s.intercept);
        t.set("max_residual", s.max_residual);
      } catch (const std::exception& e) {
        t.set("error", error_text(e));
      }
    }
  }
  out.table = std::move(t);
  return out;
}

CommandOutput cmd_scan_conductance(const ExperimentConfig& c, const RunFlags& flags) {
  Table t("scan-conductance", 1,
          concat(point_columns(), {"cut_family", "threshold", "cut_states", "phi", "flow", "capacity", "log_flow",
                                   "log_capacity", "tau_lower", "tau_upper", "seconds", "error"}));
  struct Row {
    std::string family;
    std::optional<ConductanceReport> rep;
    std::size_t states = 0;
    double pi_min = 0.0;  // 0 when no chain was built
    double seconds = 0.0;
    std::string error;
  };
  const auto pts = grid(c);
  std::vector<std::vector<Row>> res(pts.size());
  parallel_for(pts.size(), c.threads, [&](std::size_t i) {
    const int n = pts[i].n;
    std::optional<LumpedChain> chain;
    std::string chain_error;
    const auto get_chain = [&]() -> const LumpedChain& {
      if (!chain) {
        chain.emplace(build_configured_chain(c, n, pts[i].kind));
        maybe_dump(c, *chain, n, pts[i].kind);
      }
      return *chain;
    };
    // Sigma cuts of the full-space tempering chain are summed class by class.
    const bool class_sum = c.chain.kind == ChainKind::kTempering && c.chain.restriction == Restriction::kNone &&
                           c.model.family != "exp";
    for (const auto& fam : c.analysis.cut_families) {
      Row row{fam, std::nullopt, 0, 0.0, 0.0, {}};
      const auto t0 = Clock::now();
      try {
        if (fam == "sigma_1") {
          const LumpedChain& ch = get_chain();
          row.rep = min_threshold_conductance(ch, label_component_family(ch, 0, "sigma_1"));
        } else if (fam == "trace_weight") {
          const LumpedChain& ch = get_chain();
          require(ch.kind() == StateKind::kTrace, ErrorCode::kUnsupportedKind, "trace_weight needs chain.kind = trace");
          row.rep = min_threshold_conductance(ch, trace_weight_family(ch));
        } else if (fam == "exhaustive") {
          row.rep = exhaustive_conductance(get_chain());
        } else {
          const auto model = std::get<PottsModel>(model_at(c, n));
          std::function<bool(std::span<const int>)> in_cut;
          double threshold = 0.0;
          if (fam == "lambda_min") {
            const int t_min = lambda_points(model).t_min;
            threshold = t_min;
            in_cut = [t_min](std::span<const int> s) { return s[0] <= t_min; };
          } else {
            const int q = model.q;
            in_cut = [q, n](std::span<const int> s) { return in_half_cut(s, q, n); };
          }
          if (class_sum) {
            row.rep = tempering_sigma_cut_conductance(model, c.ladder.M.at(n), pts[i].kind, in_cut, fam);
          } else {
            const LumpedChain& ch = get_chain();
            const CutSet cut = CutSet::from_predicate(ch, [&](std::size_t x) { return in_cut(ch.label(x)); }, fam);
            row.rep = conductance(ch, cut);
          }
          row.rep->threshold = threshold;
        }
        if (chain) {
          row.states = chain->size();
          row.pi_min = pi_min(*chain);
        }
      } catch (const std::exception& e) {
        row.error = error_text(e);
      }
      row.seconds = seconds_since(t0, flags);
      res[i].push_back(std::move(row));
    }
  });

  CommandOutput out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (const Row& r : res[i]) {
      t.add_row();
      t.set("record", std::string("point"));
      set_point_columns(t, c, pts[i]);
      t.set("cut_family", r.family);
      if (r.states) t.set("states", static_cast<long long>(r.states));
      if (r.rep) {
        t.set("threshold", r.rep->threshold);
        if (r.rep->cut) t.set("cut_states", static_cast<long long>(r.rep->cut->count()));
        t.set("phi", r.rep->phi);
        t.set("flow", r.rep->flow);
        t.set("capacity", r.rep->capacity);
        t.set("log_flow", r.rep->log_flow);
        t.set("log_capacity", r.rep->log_capacity);
        if (r.rep->phi > 0.0) {
          const double pm = r.pi_min > 0.0 ? r.pi_min : 0.5;
          const MixingBounds b = conductance_mixing_bounds(std::min(r.rep->phi, 1.0), pm, c.analysis.epsilon);
          t.set("tau_lower", b.lower);
          if (r.pi_min > 0.0) t.set("tau_upper", b.upper);
        }
      }
      t.set("seconds", r.seconds);
      if (!r.error.empty()) {
        t.set("error", r.error);
        out.complete = false;
      }
    }
  }
  out.table = std::move(t);
  return out;
}

CommandOutput cmd_compare_rgb(const ExperimentConfig& c, const RunFlags& flags) {
  Table t("compare-rgb", 1,
          {"record", "n", "mu", "M", "t_min", "t_min_asymptotic", "states_metropolis", "states_tempering",
           "gap_metropolis", "gap_tempering", "gap_ratio", "phi_metropolis", "phi_tempering", "method_tempering",
           "seconds", "ratio_decreasing", "phi_tempering_below", "error"});
  struct Result {
    LambdaPoints lp;
    std::size_t sm = 0, st = 0;
    double gm = 0, gt = 0, pm = 0, pt = 0;
    EigenMethod method = EigenMethod::kDense;
    double seconds = 0;
    std::string error;
  };
  const auto& ns = c.model.n_grid;
  std::vector<Result> res(ns.size());
  const LadderKind kind = c.ladder.kinds.front();
  parallel_for(ns.size(), c.threads, [&](std::size_t i) {
    const auto t0 = Clock::now();
    const int n = ns[i];
    try {
      const auto model = std::get<PottsModel>(model_at(c, n));
      const Ladder ladder = ladder_at(c, n, kind);
      BuildOptions opt;
      opt.state_cap = c.analysis.state_cap;
      const LumpedChain metro = build_level_chain(ladder, ladder.M(), Restriction::kRgb, opt);
      const LumpedChain temp = build_tempering_chain(ladder, Restriction::kRgb, opt);
      Result& r = res[i];
      r.lp = lambda_points(model);
      r.sm = metro.size();
      r.st = temp.size();
      r.gm = spectral_gap(metro, c.analysis.spectral).gap;
      const SpectralReport gt = spectral_gap(temp, c.analysis.spectral);
      r.gt = gt.gap;
      r.method = gt.method;
      const int t_min = r.lp.t_min;
      const auto balanced = [t_min](const LumpedChain& ch) {
        const CutSet cut =
            CutSet::from_predicate(ch, [&](std::size_t x) { return ch.label(x)[0] <= t_min; }, "lambda_min");
        const ConductanceReport rep = conductance(ch, cut);
        return rep.flow / std::min(rep.capacity, 1.0 - rep.capacity);
      };
      r.pm = balanced(metro);
      r.pt = balanced(temp);
    } catch (const std::exception& e) {
      res[i].error = error_text(e);
    }
    res[i].seconds = seconds_since(t0, flags);
  });

  CommandOutput out;
  bool decreasing = true;
  bool below = true;
  double prev_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const Result& r = res[i];
    t.add_row();
    t.set("record", std::string("point"));
    t.set("n", static_cast<long long>(ns[i]));
    t.set("mu", mu_at(c, ns[i]));
    t.set("M", static_cast<long long>(c.ladder.M.at(ns[i])));
    t.set("seconds", r.seconds);
    if (!r.error.empty()) {
      t.set("error", r.error);
      out.complete = false;
      decreasing = below = false;
      continue;
    }
    const double ratio = r.gt / r.gm;
    decreasing = decreasing && ratio < prev_ratio;
    below = below && r.pt < r.pm;
    prev_ratio = ratio;
    t.set("t_min", static_cast<long long>(r.lp.t_min));
    t.set("t_min_asymptotic", static_cast<long long>(r.lp.asymptotic));
    t.set("states_metropolis", static_cast<long long>(r.sm));
    t.set("states_tempering", static_cast<long long>(r.st));
    t.set("gap_metropolis", r.gm);
    t.set("gap_tempering", r.gt);
    t.set("gap_ratio", ratio);
    t.set("phi_metropolis", r.pm);
    t.set("phi_tempering", r.pt);
    t.set("method_tempering", std::string(eigen_method_name(r.method)));
  }
  t.add_row();
  t.set("record", std::string("trend"));
  t.set("mu", c.model.mu.value_or(0.0));
  t.set("ratio_decreasing", static_cast<long long>(decreasing));
  t.set("phi_tempering_below", static_cast<long long>(below));
  out.table = std::move(t);
  return out;
}

CommandOutput cmd_simulate(const ExperimentConfig& c, const RunFlags& flags) {
  McKind kind = McKind::kMetropolis;
  if (c.chain.kind == ChainKind::kTempering) kind = McKind::kTempering;
  if (c.chain.kind == ChainKind::kSwap) kind = McKind::kSwap;
  nlohmann::ordered_json j = json_envelope("simulate", 1, flags.timestamp);
  j["runs"] = nlohmann::ordered_json::array();
  Table hist("simulate-histogram", 1, {"n", "ladder_kind", "level", "class", "count", "frequency", "exact"});
  CommandOutput out;
  for (const auto& p : grid(c)) {
    nlohmann::ordered_json run;
    run["n"] = p.n;
    run["ladder_kind"] = ladder_kind_name(p.kind);
    run["chain_kind"] = mc_kind_name(kind);
    try {
      const Ladder ladder = ladder_at(c, p.n, p.kind);
      McStart start{c.simulate.start, c.simulate.color, c.chain.level};
      RunOptions ro{c.simulate.steps, c.simulate.burn_in, c.simulate.stride, c.simulate.recount_every};
      std::optional<RunStats> total;
      std::vector<std::uint64_t> seeds;
      for (int r = 0; r < c.simulate.replicas; ++r) {
        const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(r);
        seeds.push_back(seed);
        McState s = mc_init(ladder, kind, seed, start);
        const RunStats st = mc_run(s, ladder, ro);
        if (total)
          total->merge(st);
        else
          total = st;
      }
      const RunStats& st = *total;
      run["seeds"] = seeds;
      run["rng"] = st.rng;
      run["steps"] = st.steps;
      run["samples"] = st.samples;
      const char* names[4] = {"level", "temperature", "swap", "hold"};
      for (int m = 0; m < 4; ++m) {
        run["proposed"][names[m]] = st.proposed[m];
        run["accepted"][names[m]] = st.accepted[m];
      }
      run["level_hist"] = st.level_hist;
      const auto sigmas = enumerate_sigma(p.n, ladder.potts().q);
      nlohmann::ordered_json tv = nlohmann::ordered_json::array();
      for (int l = 0; l < ladder.levels(); ++l) {
        const auto& h = st.class_hist[static_cast<std::size_t>(l)];
        std::uint64_t total_l = 0;
        for (auto x : h) total_l += x;
        if (total_l == 0) {
          tv.push_back(nullptr);
          continue;
        }
        const auto exact = ladder.class_distribution(l);
        double d = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k) {
          const double f = static_cast<double>(h[k]) / static_cast<double>(total_l);
          d += std::abs(f - exact[k]);
          if (h[k] == 0) continue;
          hist.add_row();
          hist.set("n", static_cast<long long>(p.n));
          hist.set("ladder_kind", std::string(ladder_kind_name(p.kind)));
          hist.set("level", static_cast<long long>(l));
          hist.set("class", sigmas[k].to_string());
          hist.set("count", static_cast<long long>(h[k]));
          hist.set("frequency", f);
          hist.set("exact", exact[k]);
        }
        tv.push_back(0.5 * d);
      }
      run["class_tv_to_exact"] = tv;
    } catch (const std::exception& e) {
      run["error"] = error_text(e);
      out.complete = false;
    }
    j["runs"].push_back(std::move(run));
  }
  out.json = std::move(j);
  if (!c.output.histogram.empty()) out.side_tables.emplace_back(c.output.histogram, std::move(hist));
  return out;
}

CommandOutput cmd_ladder_info(const ExperimentConfig& c, const RunFlags& flags) {
  nlohmann::ordered_json j = json_envelope("ladder-info", 1, flags.timestamp);
  j["ladders"] = nlohmann::ordered_json::array();
  Table t("ladder-info", 1,
          {"n", "ladder_kind", "level", "exponent", "beta", "log_partition", "trace_threshold", "error"});
  CommandOutput out;
  for (const auto& p : grid(c)) {
    nlohmann::ordered_json e;
    e["n"] = p.n;
    e["ladder_kind"] = ladder_kind_name(p.kind);
    try {
      const Ladder l = ladder_at(c, p.n, p.kind);
      e["M"] = l.M();
      e["exponents"] = std::vector<double>(l.exponents().begin(), l.exponents().end());
      e["log_partitions"] = std::vector<double>(l.log_partitions().begin(), l.log_partitions().end());
      std::optional<TraceSpec> trace;
      if (!l.is_potts() || l.potts().q == 2) {
        try {
          trace = trace_threshold(l);
          e["trace_thresholds"] = trace->thresholds;
        } catch (const Error& err) {
          e["trace_error"] = error_text(err);
        }
      }
      if (l.is_potts()) {
        std::vector<double> betas;
        for (int i = 0; i < l.levels(); ++i) betas.push_back(l.exponent(i) * l.potts().beta);
        e["level_betas"] = betas;
        if (l.potts().q == 3) {
          try {
            const LambdaPoints lp = lambda_points(l.potts());
            e["valley"] = {{"t_min", lp.t_min},
                           {"t_max", lp.t_max},
                           {"lambda_min", lp.lambda_min()},
                           {"lambda_max", lp.lambda_max()},
                           {"asymptotic", lp.asymptotic}};
          } catch (const Error& err) {
            e["valley_error"] = error_text(err);
          }
        }
      }
      if (c.analysis.distributions) {
        nlohmann::ordered_json d = nlohmann::ordered_json::array();
        std::vector<std::string> labels;
        if (l.is_potts()) {
          for (const Sigma& s : enumerate_sigma(p.n, l.potts().q)) labels.push_back(s.to_string());
        } else {
          for (int x = -l.exp_model().N; x <= l.exp_model().N_prime; ++x) labels.push_back(std::to_string(x));
        }
        for (int i = 0; i < l.levels(); ++i) {
          nlohmann::ordered_json lv;
          const auto pr = l.class_distribution(i);
          for (std::size_t k = 0; k < pr.size(); ++k) lv[labels[k]] = pr[k];
          d.push_back(std::move(lv));
        }
        e["distributions"] = std::move(d);
      }
      for (int i = 0; i < l.levels(); ++i) {
        t.add_row();
        t.set("n", static_cast<long long>(p.n));
        t.set("ladder_kind", std::string(ladder_kind_name(p.kind)));
        t.set("level", static_cast<long long>(i));
        t.set("exponent", l.exponent(i));
        if (l.is_potts()) t.set("beta", l.exponent(i) * l.potts().beta);
        t.set("log_partition", l.log_partition(i));
        if (trace) t.set("trace_threshold", static_cast<long long>(trace->thresholds[static_cast<std::size_t>(i)]));
      }
    } catch (const std::exception& err) {
      e["error"] = error_text(err);
      t.add_row();
      t.set("n", static_cast<long long>(p.n));
      t.set("ladder_kind", std::string(ladder_kind_name(p.kind)));
      t.set("error", error_text(err));
      out.complete = false;
    }
    j["ladders"].push_back(std::move(e));
  }
  out.json = std::move(j);
  if (c.output.format == "csv") {
    out.table = std::move(t);
    out.json.reset();
  }
  return out;
}

}  // namespace temperlab::cli
