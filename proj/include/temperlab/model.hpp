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

#ifndef TEMPERLAB_MODEL_HPP
#define TEMPERLAB_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "temperlab/sigma.hpp"

namespace temperlab {

/// Mean-field q-state Potts model (q = 2 is the Ising model) on the complete
/// graph with per-color external fields. Gibbs weight exp(beta * H(x)).
struct PottsModel {
  int q = 3;
  int n = 1;
  double beta = 0.0;
  std::vector<double> fields;  // length q; empty means zero field
  std::optional<double> mu;    // set when beta was given as mu / n

  static PottsModel with_beta(int q, int n, double beta, std::vector<double> fields = {});
  static PottsModel with_mu(int q, int n, double mu, std::vector<double> fields = {});

  double bar_beta() const { return beta / 2.0; }
  std::span<const double> field_span() const { return fields; }
};

/// Ising model (q = 2) with a field h on the +1 color. The +1 count is sigma_1.
PottsModel ising_model(int n, double beta, double h = 0.0);

/// log of the Gibbs mass of the class Omega_sigma at the model's beta.
double log_gibbs_class_weight(const PottsModel& m, std::span<const int> counts);

/// Critical inverse temperatures on the complete graph. For the 3-state Potts
/// model the ordered and disordered modes balance at 4 ln 2 / n; the Ising
/// (Curie-Weiss) transition is at 2 / n in the pair-count Hamiltonian.
double potts3_critical_beta(int n);
double ising_critical_beta(int n);

/// pi(x) proportional to C^{|x|} on the integers [-N, N'].
struct ExpModel {
  double C = 2.0;
  int N = 1;
  int N_prime = 1;

  int size() const { return N + N_prime + 1; }
};

using Model = std::variant<PottsModel, ExpModel>;

void validate(const PottsModel& m);
void validate(const ExpModel& m);

enum class LadderKind { kTempered, kDampened };

const char* ladder_kind_name(LadderKind kind);
LadderKind parse_ladder_kind(const std::string& name);

/// Class log weight from its parts (log multinomial, bar-Hamiltonian, field
/// term) at a ladder exponent e; the single formula behind Ladder weights.
double class_weight_from_parts(LadderKind kind, double e, const PottsModel& m, double log_mult, double bar_h,
                               double field);

struct LadderOptions {
  std::uint64_t state_cap = kDefaultStateCap;
};

/// M + 1 distributions indexed by level with exact log-partition values.
///
/// TEMPERED: level i is the Gibbs distribution at beta_i = exponent[i] * beta.
/// DAMPENED: level i has class weight rho_M(class)^{exponent[i]}, i.e. the
///   multinomial entropy is dampened together with the energy.
/// Exponential models only support TEMPERED: level i is C^{exponent[i] |x|}.
class Ladder {
 public:
  const Model& model() const { return model_; }
  bool is_potts() const { return std::holds_alternative<PottsModel>(model_); }
  const PottsModel& potts() const;
  const ExpModel& exp_model() const;

  int M() const { return static_cast<int>(exponents_.size()) - 1; }
  int levels() const { return static_cast<int>(exponents_.size()); }
  LadderKind kind() const { return kind_; }
  std::span<const double> exponents() const { return exponents_; }
  double exponent(int level) const;
  std::span<const double> log_partitions() const { return log_partitions_; }
  double log_partition(int level) const;

  /// Inverse temperature of a TEMPERED level, exponent * beta.
  double level_beta(int level) const;

  /// Unnormalized log weight of the whole class Omega_sigma at a level.
  double log_class_weight(int level, std::span<const int> counts) const;
  double log_class_weight(int level, const Sigma& s) const { return log_class_weight(level, s.counts()); }

  /// Unnormalized log weight of a single configuration in the class; this is
  /// what Metropolis acceptance ratios compare.
  double log_config_weight(int level, std::span<const int> counts) const;
  double log_config_weight(int level, const Sigma& s) const { return log_config_weight(level, s.counts()); }

  /// Exponential family: unnormalized log weight of the point x.
  double log_point_weight(int level, int x) const;

  /// Normalized class masses at a level, in enumerate_sigma order (Potts) or
  /// for x = -N..N' (exponential).
  std::vector<double> class_distribution(int level) const;

 private:
  friend Ladder make_ladder(Model model, int M, LadderKind kind,
                            std::optional<std::vector<double>> exponents, LadderOptions options);

  void check_level(int level) const;

  Model model_;
  LadderKind kind_ = LadderKind::kTempered;
  std::vector<double> exponents_;
  std::vector<double> log_partitions_;
};

/// Builds a ladder. Exponents default to i / M; with M = 0 the single level is
/// the target (exponent 1). Custom exponents must be non-decreasing and run
/// from 0 to 1. Log-partitions are exact sums over the lumped state space.
Ladder make_ladder(Model model, int M, LadderKind kind,
                   std::optional<std::vector<double>> exponents = std::nullopt,
                   LadderOptions options = {});

/// e * |x| * ln C.
double exp_log_weight(const ExpModel& model, double e, int x);

}  // namespace temperlab

#endif  // TEMPERLAB_MODEL_HPP
