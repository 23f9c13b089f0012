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

#ifndef TEMPERLAB_MC_HPP
#define TEMPERLAB_MC_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "temperlab/model.hpp"

namespace temperlab {

/// Explicit n-vertex configuration with colors in [0, q).
struct SpinConfig {
  std::vector<int> spins;
};

enum class McKind { kMetropolis, kTempering, kSwap };
enum class StartKind { kDisordered, kOrdered, kRandom };

const char* mc_kind_name(McKind k);
McKind parse_mc_kind(const std::string& name);
StartKind parse_start_kind(const std::string& name);

struct McStart {
  StartKind kind = StartKind::kDisordered;
  int color = 0;   // kOrdered
  int level = -1;  // Metropolis level and tempering start level; -1 means M
};

/// Name of the generator recorded in RunStats.
inline constexpr const char* kRngName = "mt19937_64 seeded by splitmix64";

/// Deterministic generator for a 64-bit seed: four splitmix64 outputs feed a
/// seed_seq for mt19937_64.
std::mt19937_64 make_rng(std::uint64_t seed);

struct McState {
  McKind kind = McKind::kMetropolis;
  std::vector<SpinConfig> configs;       // one, or M + 1 for kSwap
  std::vector<std::vector<int>> counts;  // cached sigma per config
  int level = 0;                         // Metropolis/tempering level
  std::uint64_t seed = 0;
  std::mt19937_64 rng;
};

McState mc_init(const Ladder& ladder, McKind kind, std::uint64_t seed, const McStart& start = {});

enum class MoveType { kLevel = 0, kTemperature = 1, kSwap = 2, kHold = 3 };

struct MoveRecord {
  MoveType type = MoveType::kLevel;
  bool accepted = false;
  bool null_proposal = false;  // proposal equals the current state
  int level = 0;               // level acted on (lower level for swaps)
};

/// One transition with the same proposal order and acceptance rule as the
/// lumped builders: vertex, then color; the level/temperature coin first.
MoveRecord mc_step(McState& state, const Ladder& ladder);

struct RunStats {
  std::uint64_t seed = 0;
  std::string rng = kRngName;
  long steps = 0;
  long samples = 0;
  /// class_hist[level][r]: visits of the class with enumerate_sigma index r.
  /// Metropolis and tempering record the current level; swap records every level.
  std::vector<std::vector<std::uint64_t>> class_hist;
  std::vector<std::uint64_t> level_hist;
  std::vector<std::uint64_t> proposed = std::vector<std::uint64_t>(4, 0);  // by MoveType
  std::vector<std::uint64_t> accepted = std::vector<std::uint64_t>(4, 0);

  /// Sums another run's counters into this one.
  void merge(const RunStats& other);
};

struct RunOptions {
  long steps = 0;
  long burn_in = 0;
  long stride = 1;
  long recount_every = 0;  // > 0 recounts sigma every so many steps
};

RunStats mc_run(McState& state, const Ladder& ladder, const RunOptions& options);

/// Recomputes the sigma counts and compares them with the cache.
bool counts_consistent(const McState& state, int q);

}  // namespace temperlab

#endif  // TEMPERLAB_MC_HPP
