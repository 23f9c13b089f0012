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

#ifndef TEMPERLAB_CLI_CONFIG_HPP
#define TEMPERLAB_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "temperlab/analysis.hpp"
#include "temperlab/lumped.hpp"
#include "temperlab/mc.hpp"
#include "temperlab/model.hpp"

namespace temperlab::cli {

/// An integer that is either fixed or tied to the grid value n ("n" in YAML).
struct GridInt {
  int value = 0;
  bool tied = false;
  int at(int n) const { return tied ? n : value; }
};

struct ModelBlock {
  std::string family = "potts";  // potts | ising | exp
  int q = 3;
  std::vector<int> n_grid{12};
  std::optional<double> mu;          // beta = mu / n
  std::optional<double> beta;        // absolute
  std::optional<double> beta_scale;  // multiple of the critical beta
  double h = 0.0;                    // ising field on the +1 color
  std::vector<double> fields;        // potts per-color fields
  double C = 2.0;
  GridInt N{1, false};
  GridInt N_prime{1, false};
};

struct LadderBlock {
  GridInt M{0, true};
  std::vector<LadderKind> kinds{LadderKind::kTempered};
  std::optional<std::vector<double>> exponents;
};

enum class ChainKind { kLevel, kTempering, kSwap, kTrace, kFlattened };
const char* chain_kind_name(ChainKind k);

struct ChainBlock {
  ChainKind kind = ChainKind::kLevel;
  Restriction restriction = Restriction::kNone;
  int level = -1;  // -1 means M
  bool swap_moves = true;
  std::string dump;  // sparse triplet path; empty means no dump
};

struct AnalysisBlock {
  std::vector<std::string> targets{"gap"};       // gap | conductance | tv
  std::vector<std::string> cut_families{"sigma_1"};
  std::vector<FitKind> fits{FitKind::kExpInN, FitKind::kPolyInN};
  SpectralOptions spectral;
  double epsilon = 0.125;
  std::uint64_t state_cap = kDefaultStateCap;
  MixingOptions mixing;
  std::vector<std::string> items{"a", "b", "c", "d", "e", "f"};
  int slope_n_lo = 6000;
  int slope_n_hi = 12000;
  bool distributions = false;  // ladder-info: include class laws
};

struct SimulateBlock {
  long steps = 100000;
  long burn_in = 1000;
  long stride = 1;
  long recount_every = 0;
  StartKind start = StartKind::kDisordered;
  int color = 0;
  int replicas = 1;
};

struct OutputBlock {
  std::string path;  // empty means stdout
  std::string format = "csv";
  std::string histogram;  // simulate: class histogram CSV path
  bool timestamp = true;
};

struct ExperimentConfig {
  ModelBlock model;
  LadderBlock ladder;
  ChainBlock chain;
  AnalysisBlock analysis;
  SimulateBlock simulate;
  OutputBlock output;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct ConfigIssue {
  std::string field;
  std::string message;
};

/// Thrown with every problem found, never just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Parses YAML text. Unknown keys and type errors are appended to `issues`
/// when given (parsing continues with defaults), else thrown as ConfigError.
/// YAML syntax errors always throw.
ExperimentConfig parse_config(const std::string& yaml_text, std::vector<ConfigIssue>* issues = nullptr);
ExperimentConfig load_config(const std::string& path, std::vector<ConfigIssue>* issues = nullptr);

/// Checks the config against the library preconditions of `command`.
std::vector<ConfigIssue> validate_config(const ExperimentConfig& config, const std::string& command);

/// Model at grid value n.
Model model_at(const ExperimentConfig& config, int n);
Ladder ladder_at(const ExperimentConfig& config, int n, LadderKind kind);
/// Inverse temperature at grid value n (0 when none is given).
double beta_at(const ExperimentConfig& config, int n);
/// mu recorded for output: the given mu, else beta * n.
double mu_at(const ExperimentConfig& config, int n);

}  // namespace temperlab::cli

#endif  // TEMPERLAB_CLI_CONFIG_HPP
