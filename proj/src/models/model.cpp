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

#include "temperlab/model.hpp"

#include <cmath>
#include <cstdlib>

#include "temperlab/error.hpp"
#include "temperlab/log_math.hpp"

namespace temperlab {

double class_weight_from_parts(LadderKind kind, double e, const PottsModel& m, double log_mult, double bar_h,
                               double field) {
  if (kind == LadderKind::kTempered) {
    const double b = e * m.beta;
    return log_mult + 0.5 * b * bar_h + b * field;
  }
  return e * (log_mult + m.bar_beta() * bar_h + m.beta * field);
}

PottsModel PottsModel::with_beta(int q, int n, double beta, std::vector<double> fields) {
  PottsModel m;
  m.q = q;
  m.n = n;
  m.beta = beta;
  m.fields = fields.empty() ? std::vector<double>(static_cast<std::size_t>(q), 0.0) : std::move(fields);
  validate(m);
  return m;
}

PottsModel PottsModel::with_mu(int q, int n, double mu, std::vector<double> fields) {
  PottsModel m = with_beta(q, n, mu / n, std::move(fields));
  m.mu = mu;
  return m;
}

PottsModel ising_model(int n, double beta, double h) { return PottsModel::with_beta(2, n, beta, {h, 0.0}); }

double log_gibbs_class_weight(const PottsModel& m, std::span<const int> counts) {
  return class_weight_from_parts(LadderKind::kTempered, 1.0, m, log_multinomial(counts), bar_hamiltonian(counts),
                                 field_term(counts, m.fields));
}

double potts3_critical_beta(int n) { return 4.0 * std::log(2.0) / n; }
double ising_critical_beta(int n) { return 2.0 / n; }

void validate(const PottsModel& m) {
  require(m.q >= 2, ErrorCode::kInvalidArgument, "PottsModel: q must be >= 2");
  require(m.n >= 1, ErrorCode::kInvalidArgument, "PottsModel: n must be >= 1");
  require(m.beta >= 0.0 && std::isfinite(m.beta), ErrorCode::kInvalidArgument,
          "PottsModel: beta must be finite and >= 0 (ferromagnetic only)");
  require(m.fields.empty() || static_cast<int>(m.fields.size()) == m.q, ErrorCode::kInvalidArgument,
          "PottsModel: fields must have length q");
}

void validate(const ExpModel& m) {
  require(m.C > 1.0 && std::isfinite(m.C), ErrorCode::kInvalidArgument, "ExpModel: C must be > 1");
  require(m.N >= 1 && m.N_prime >= 1, ErrorCode::kInvalidArgument, "ExpModel: N and N' must be positive");
}

const char* ladder_kind_name(LadderKind kind) {
  return kind == LadderKind::kTempered ? "tempered" : "dampened";
}

LadderKind parse_ladder_kind(const std::string& name) {
  if (name == "tempered" || name == "TEMPERED") return LadderKind::kTempered;
  if (name == "dampened" || name == "DAMPENED") return LadderKind::kDampened;
  throw Error(ErrorCode::kInvalidArgument, "unknown ladder kind '" + name + "'");
}

const PottsModel& Ladder::potts() const {
  require(is_potts(), ErrorCode::kUnsupportedKind, "ladder does not hold a Potts model");
  return std::get<PottsModel>(model_);
}

const ExpModel& Ladder::exp_model() const {
  require(!is_potts(), ErrorCode::kUnsupportedKind, "ladder does not hold an exponential model");
  return std::get<ExpModel>(model_);
}

void Ladder::check_level(int level) const {
  require(level >= 0 && level <= M(), ErrorCode::kOutOfRange,
          "level " + std::to_string(level) + " outside [0, " + std::to_string(M()) + "]");
}

double Ladder::exponent(int level) const {
  check_level(level);
  return exponents_[static_cast<std::size_t>(level)];
}

double Ladder::log_partition(int level) const {
  check_level(level);
  return log_partitions_[static_cast<std::size_t>(level)];
}

double Ladder::level_beta(int level) const { return exponent(level) * potts().beta; }

double Ladder::log_class_weight(int level, std::span<const int> counts) const {
  check_level(level);
  const PottsModel& m = potts();
  return class_weight_from_parts(kind_, exponents_[static_cast<std::size_t>(level)], m, log_multinomial(counts),
                                 bar_hamiltonian(counts), field_term(counts, m.fields));
}

double Ladder::log_config_weight(int level, std::span<const int> counts) const {
  return log_class_weight(level, counts) - log_multinomial(counts);
}

double Ladder::log_point_weight(int level, int x) const {
  check_level(level);
  return exp_log_weight(exp_model(), exponents_[static_cast<std::size_t>(level)], x);
}

std::vector<double> Ladder::class_distribution(int level) const {
  check_level(level);
  const double log_z = log_partitions_[static_cast<std::size_t>(level)];
  std::vector<double> out;
  if (is_potts()) {
    const PottsModel& m = potts();
    out.reserve(composition_count(m.n, m.q));
    for_each_sigma(m.n, m.q, [&](std::span<const int> c) { out.push_back(std::exp(log_class_weight(level, c) - log_z)); });
  } else {
    const ExpModel& m = exp_model();
    for (int x = -m.N; x <= m.N_prime; ++x) out.push_back(std::exp(log_point_weight(level, x) - log_z));
  }
  return out;
}

double exp_log_weight(const ExpModel& model, double e, int x) {
  require(x >= -model.N && x <= model.N_prime, ErrorCode::kOutOfRange,
          "exp_log_weight: x = " + std::to_string(x) + " outside [-N, N']");
  return e * std::abs(x) * std::log(model.C);
}

Ladder make_ladder(Model model, int M, LadderKind kind, std::optional<std::vector<double>> exponents,
                   LadderOptions options) {
  require(M >= 0, ErrorCode::kInvalidArgument, "make_ladder: M must be >= 0");
  std::visit([](const auto& m) { validate(m); }, model);
  const bool potts = std::holds_alternative<PottsModel>(model);
  require(potts || kind == LadderKind::kTempered, ErrorCode::kUnsupportedKind,
          "make_ladder: DAMPENED ladders need a color-count model (Potts/Ising)");

  Ladder ladder;
  ladder.kind_ = kind;
  if (exponents) {
    const auto& e = *exponents;
    require(static_cast<int>(e.size()) == M + 1, ErrorCode::kInvalidArgument,
            "make_ladder: need exactly M + 1 exponents");
    for (std::size_t i = 0; i < e.size(); ++i) {
      require(e[i] >= 0.0 && e[i] <= 1.0, ErrorCode::kInvalidArgument, "make_ladder: exponents must lie in [0, 1]");
      if (i > 0) require(e[i] >= e[i - 1], ErrorCode::kInvalidArgument, "make_ladder: exponents must be non-decreasing");
    }
    require(e.back() == 1.0, ErrorCode::kInvalidArgument, "make_ladder: last exponent must be 1");
    if (M > 0) require(e.front() == 0.0, ErrorCode::kInvalidArgument, "make_ladder: first exponent must be 0");
    ladder.exponents_ = e;
  } else {
    ladder.exponents_.resize(static_cast<std::size_t>(M) + 1);
    for (int i = 0; i <= M; ++i) ladder.exponents_[static_cast<std::size_t>(i)] = M == 0 ? 1.0 : static_cast<double>(i) / M;
  }
  if (potts) {
    auto& m = std::get<PottsModel>(model);
    if (m.fields.empty()) m.fields.assign(static_cast<std::size_t>(m.q), 0.0);
    const std::uint64_t count = composition_count(m.n, m.q);
    require(count <= options.state_cap, ErrorCode::kStateSpaceTooLarge,
            "make_ladder: " + std::to_string(count) + " classes exceed cap " + std::to_string(options.state_cap));
  } else {
    const auto& m = std::get<ExpModel>(model);
    require(static_cast<std::uint64_t>(m.size()) <= options.state_cap, ErrorCode::kStateSpaceTooLarge,
            "make_ladder: exponential state space exceeds cap");
  }
  ladder.model_ = std::move(model);
  ladder.log_partitions_.assign(ladder.exponents_.size(), 0.0);

  std::vector<LogSumAccumulator> acc(ladder.exponents_.size());
  if (potts) {
    const PottsModel& m = ladder.potts();
    const auto& e = ladder.exponents_;
    for_each_sigma(m.n, m.q, [&](std::span<const int> c) {
      const double lm = log_multinomial(c);
      const double h2 = bar_hamiltonian(c);
      const double f = field_term(c, m.fields);
      for (std::size_t i = 0; i < e.size(); ++i) acc[i].add(class_weight_from_parts(kind, e[i], m, lm, h2, f));
    });
  } else {
    const ExpModel& m = ladder.exp_model();
    for (int x = -m.N; x <= m.N_prime; ++x)
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i].add(exp_log_weight(m, ladder.exponents_[i], x));
  }
  for (std::size_t i = 0; i < acc.size(); ++i) ladder.log_partitions_[i] = acc[i].value();
  return ladder;
}

}  // namespace temperlab
