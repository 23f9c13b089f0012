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

#include "temperlab/mc.hpp"

#include <cmath>
#include <utility>

#include "temperlab/error.hpp"
#include "temperlab/sigma.hpp"

namespace temperlab {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) { return std::generate_canonical<double, 64>(rng); }

int uniform_int(std::mt19937_64& rng, int n) {
  return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng));
}

bool accept(std::mt19937_64& rng, double delta_log) { return delta_log >= 0.0 || uniform01(rng) < std::exp(delta_log); }

SpinConfig initial_config(int n, int q, const McStart& start, std::mt19937_64& rng) {
  SpinConfig c;
  c.spins.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    switch (start.kind) {
      case StartKind::kDisordered: c.spins[v] = v % q; break;
      case StartKind::kOrdered: c.spins[v] = start.color; break;
      case StartKind::kRandom: c.spins[v] = uniform_int(rng, q); break;
    }
  }
  return c;
}

std::vector<int> recount(const SpinConfig& c, int q) {
  std::vector<int> counts(static_cast<std::size_t>(q), 0);
  for (int s : c.spins) ++counts[s];
  return counts;
}

/// Recolors one uniformly chosen vertex with probability min(1, ratio).
bool level_move(McState& s, std::size_t which, int level, const Ladder& ladder, bool& null_proposal) {
  const int q = ladder.potts().q;
  auto& cfg = s.configs[which];
  auto& c = s.counts[which];
  const int v = uniform_int(s.rng, static_cast<int>(cfg.spins.size()));
  const int b = uniform_int(s.rng, q);
  const int a = cfg.spins[v];
  null_proposal = a == b;
  if (null_proposal) return false;
  const double before = ladder.log_config_weight(level, c);
  --c[a];
  ++c[b];
  const double after = ladder.log_config_weight(level, c);
  if (accept(s.rng, after - before)) {
    cfg.spins[v] = b;
    return true;
  }
  ++c[a];
  --c[b];
  return false;
}

}  // namespace

const char* mc_kind_name(McKind k) {
  switch (k) {
    case McKind::kMetropolis: return "metropolis";
    case McKind::kTempering: return "tempering";
    case McKind::kSwap: return "swap";
  }
  return "metropolis";
}

McKind parse_mc_kind(const std::string& name) {
  if (name == "metropolis" || name == "level") return McKind::kMetropolis;
  if (name == "tempering") return McKind::kTempering;
  if (name == "swap") return McKind::kSwap;
  throw Error(ErrorCode::kInvalidArgument, "unknown chain kind '" + name + "'");
}

StartKind parse_start_kind(const std::string& name) {
  if (name == "disordered") return StartKind::kDisordered;
  if (name == "ordered") return StartKind::kOrdered;
  if (name == "random") return StartKind::kRandom;
  throw Error(ErrorCode::kInvalidArgument, "unknown start '" + name + "'");
}

std::mt19937_64 make_rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  std::vector<std::uint32_t> words;
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t z = splitmix64(x);
    words.push_back(static_cast<std::uint32_t>(z));
    words.push_back(static_cast<std::uint32_t>(z >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}

McState mc_init(const Ladder& ladder, McKind kind, std::uint64_t seed, const McStart& start) {
  require(ladder.is_potts(), ErrorCode::kUnsupportedKind, "Monte Carlo runs on Potts/Ising ladders");
  const auto& m = ladder.potts();
  require(start.kind != StartKind::kOrdered || (start.color >= 0 && start.color < m.q), ErrorCode::kInvalidArgument,
          "ordered start color out of range");
  require(start.level >= -1 && start.level <= ladder.M(), ErrorCode::kOutOfRange, "start level out of range");
  McState s;
  s.kind = kind;
  s.seed = seed;
  s.rng = make_rng(seed);
  s.level = start.level < 0 ? ladder.M() : start.level;
  const int copies = kind == McKind::kSwap ? ladder.levels() : 1;
  for (int k = 0; k < copies; ++k) {
    s.configs.push_back(initial_config(m.n, m.q, start, s.rng));
    s.counts.push_back(recount(s.configs.back(), m.q));
  }
  return s;
}

MoveRecord mc_step(McState& s, const Ladder& ladder) {
  MoveRecord r;
  switch (s.kind) {
    case McKind::kMetropolis:
      r.level = s.level;
      r.accepted = level_move(s, 0, s.level, ladder, r.null_proposal);
      return r;
    case McKind::kTempering: {
      r.level = s.level;
      if (uniform01(s.rng) < 0.5) {
        r.accepted = level_move(s, 0, s.level, ladder, r.null_proposal);
        return r;
      }
      r.type = MoveType::kTemperature;
      const int j = s.level + (uniform01(s.rng) < 0.5 ? -1 : 1);
      if (j < 0 || j > ladder.M()) {
        r.null_proposal = true;
        return r;
      }
      const auto& c = s.counts[0];
      const double d = (ladder.log_class_weight(j, c) - ladder.log_partition(j)) -
                       (ladder.log_class_weight(s.level, c) - ladder.log_partition(s.level));
      if (accept(s.rng, d)) {
        s.level = j;
        r.accepted = true;
      }
      return r;
    }
    case McKind::kSwap: {
      const int M = ladder.M();
      if (uniform01(s.rng) < 0.5) {
        r.level = uniform_int(s.rng, M + 1);
        r.accepted = level_move(s, static_cast<std::size_t>(r.level), r.level, ladder, r.null_proposal);
        return r;
      }
      if (M == 0) {
        r.type = MoveType::kHold;
        r.null_proposal = true;
        return r;
      }
      r.type = MoveType::kSwap;
      const int k = uniform_int(s.rng, M);
      r.level = k;
      const auto& a = s.counts[k];
      const auto& b = s.counts[k + 1];
      const double d = (ladder.log_config_weight(k, b) + ladder.log_config_weight(k + 1, a)) -
                       (ladder.log_config_weight(k, a) + ladder.log_config_weight(k + 1, b));
      if (accept(s.rng, d)) {
        std::swap(s.configs[k], s.configs[k + 1]);
        std::swap(s.counts[k], s.counts[k + 1]);
        r.accepted = true;
      }
      return r;
    }
  }
  return r;
}

bool counts_consistent(const McState& state, int q) {
  for (std::size_t k = 0; k < state.configs.size(); ++k)
    if (recount(state.configs[k], q) != state.counts[k]) return false;
  return true;
}

void RunStats::merge(const RunStats& other) {
  require(class_hist.size() == other.class_hist.size(), ErrorCode::kInvalidArgument, "RunStats shapes differ");
  steps += other.steps;
  samples += other.samples;
  for (std::size_t l = 0; l < class_hist.size(); ++l)
    for (std::size_t r = 0; r < class_hist[l].size(); ++r) class_hist[l][r] += other.class_hist[l][r];
  for (std::size_t l = 0; l < level_hist.size(); ++l) level_hist[l] += other.level_hist[l];
  for (std::size_t t = 0; t < proposed.size(); ++t) {
    proposed[t] += other.proposed[t];
    accepted[t] += other.accepted[t];
  }
}

RunStats mc_run(McState& s, const Ladder& ladder, const RunOptions& opt) {
  require(opt.steps > opt.burn_in && opt.burn_in >= 0, ErrorCode::kInvalidArgument, "steps must exceed burn_in");
  require(opt.stride >= 1, ErrorCode::kInvalidArgument, "stride must be positive");
  const auto& m = ladder.potts();
  const std::uint64_t classes = composition_count(m.n, m.q);
  require(classes <= kDefaultStateCap, ErrorCode::kStateSpaceTooLarge, "class histogram above the state cap");
  RunStats st;
  st.seed = s.seed;
  st.class_hist.assign(static_cast<std::size_t>(ladder.levels()), std::vector<std::uint64_t>(classes, 0));
  st.level_hist.assign(static_cast<std::size_t>(ladder.levels()), 0);
  for (long t = 1; t <= opt.steps; ++t) {
    const MoveRecord r = mc_step(s, ladder);
    ++st.steps;
    ++st.proposed[static_cast<int>(r.type)];
    if (r.accepted) ++st.accepted[static_cast<int>(r.type)];
    if (opt.recount_every > 0 && t % opt.recount_every == 0 && !counts_consistent(s, m.q))
      throw Error(ErrorCode::kInconsistentChain, "cached sigma counts drifted from the configuration");
    if (t <= opt.burn_in || (t - opt.burn_in) % opt.stride != 0) continue;
    ++st.samples;
    if (s.kind == McKind::kSwap) {
      for (std::size_t l = 0; l < s.counts.size(); ++l) ++st.class_hist[l][sigma_rank(s.counts[l])];
      for (auto& h : st.level_hist) ++h;
    } else {
      ++st.class_hist[static_cast<std::size_t>(s.level)][sigma_rank(s.counts[0])];
      ++st.level_hist[static_cast<std::size_t>(s.level)];
    }
  }
  return st;
}

}  // namespace temperlab
