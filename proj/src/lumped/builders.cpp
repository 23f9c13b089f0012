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

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "level_space.hpp"
#include "temperlab/error.hpp"
#include "temperlab/lumped.hpp"

namespace temperlab {

using detail::ClassSpace;
using detail::LevelData;
using detail::metropolis_accept;

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

LumpedChain::Metadata ladder_params(const Ladder& ladder, Restriction restriction) {
  LumpedChain::Metadata p;
  if (ladder.is_potts()) {
    const auto& m = ladder.potts();
    p = {{"family", m.q == 2 ? "ising" : "potts"}, {"q", std::to_string(m.q)}, {"n", std::to_string(m.n)},
         {"beta", fmt_double(m.beta)}};
  } else {
    const auto& m = ladder.exp_model();
    p = {{"family", "exponential"}, {"C", fmt_double(m.C)}, {"N", std::to_string(m.N)},
         {"N_prime", std::to_string(m.N_prime)}};
  }
  p.emplace_back("M", std::to_string(ladder.M()));
  p.emplace_back("ladder", ladder_kind_name(ladder.kind()));
  p.emplace_back("restriction", restriction_name(restriction));
  return p;
}

std::vector<LevelData> all_levels(const Ladder& ladder, const ClassSpace& space, Restriction restriction) {
  std::vector<LevelData> levels;
  levels.reserve(static_cast<std::size_t>(ladder.levels()));
  for (int i = 0; i < ladder.levels(); ++i) levels.push_back(detail::level_data(ladder, i, space, restriction));
  return levels;
}

}  // namespace

const char* restriction_name(Restriction r) { return r == Restriction::kRgb ? "rgb" : "none"; }

Restriction parse_restriction(const std::string& name) {
  if (name == "none" || name == "NONE") return Restriction::kNone;
  if (name == "rgb" || name == "RGB") return Restriction::kRgb;
  throw Error(ErrorCode::kInvalidArgument, "unknown restriction '" + name + "'");
}

LumpedChain build_level_chain(const Ladder& ladder, int level, Restriction restriction, const BuildOptions& options) {
  require(level >= 0 && level <= ladder.M(), ErrorCode::kOutOfRange, "level out of range");
  const ClassSpace space = detail::ladder_space(ladder, restriction, options.state_cap);
  LevelData d = detail::level_data(ladder, level, space, restriction);
  auto params = ladder_params(ladder, restriction);
  params.emplace_back("level", std::to_string(level));
  return LumpedChain(space.is_points() ? StateKind::kPoint : StateKind::kClass, space.labels(), std::move(d.class_log),
                     std::move(d.rows), "level", std::move(params));
}

LumpedChain build_tempering_chain(const Ladder& ladder, Restriction restriction, const BuildOptions& options) {
  const ClassSpace space = detail::ladder_space(ladder, restriction, options.state_cap);
  const std::size_t S = space.size();
  const std::size_t L = static_cast<std::size_t>(ladder.levels());
  require(S * L <= options.state_cap, ErrorCode::kStateSpaceTooLarge,
          "tempering chain has " + std::to_string(S * L) + " states, above the cap");
  const std::vector<LevelData> lv = all_levels(ladder, space, restriction);

  std::vector<std::vector<int>> labels(S * L);
  std::vector<double> slog(S * L);
  std::vector<std::vector<Transition>> rows(S * L);
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t s = 0; s < S; ++s) {
      const std::size_t x = i * S + s;
      labels[x] = space.label(s);
      labels[x].push_back(static_cast<int>(i));
      const double own = lv[i].class_log[s] - lv[i].log_z;
      slog[x] = own;
      auto& r = rows[x];
      r.reserve(lv[i].rows[s].size() + 2);
      for (const auto& t : lv[i].rows[s]) r.push_back({i * S + t.to, 0.5 * t.p});
      // Class weights differ from config weights by the same multinomial at
      // both levels, so either gives the acceptance ratio.
      if (i > 0) r.push_back({(i - 1) * S + s, 0.25 * metropolis_accept(lv[i - 1].class_log[s] - lv[i - 1].log_z - own)});
      if (i + 1 < L) r.push_back({(i + 1) * S + s, 0.25 * metropolis_accept(lv[i + 1].class_log[s] - lv[i + 1].log_z - own)});
    }
  }
  return LumpedChain(StateKind::kTempering, std::move(labels), std::move(slog), std::move(rows), "tempering",
                     ladder_params(ladder, restriction));
}

LumpedChain build_swap_chain(const Ladder& ladder, Restriction restriction, const BuildOptions& options) {
  const ClassSpace space = detail::ladder_space(ladder, restriction, options.state_cap);
  const std::size_t S = space.size();
  const int L = ladder.levels();
  const int M = ladder.M();
  std::size_t total = 1;
  for (int k = 0; k < L; ++k) {
    require(total <= options.state_cap / S, ErrorCode::kStateSpaceTooLarge,
            "swap chain product space exceeds the cap " + std::to_string(options.state_cap) +
                "; use the trace projection or Monte Carlo instead");
    total *= S;
  }
  const std::vector<LevelData> lv = all_levels(ladder, space, restriction);
  std::vector<std::size_t> stride(static_cast<std::size_t>(L), 1);
  for (int k = 1; k < L; ++k) stride[k] = stride[k - 1] * S;

  const double p_level = options.swap_moves ? 1.0 / (2.0 * L) : 1.0 / L;
  const double p_swap = (options.swap_moves && M > 0) ? 1.0 / (2.0 * M) : 0.0;

  std::vector<std::vector<int>> labels(total);
  std::vector<double> slog(total);
  std::vector<std::vector<Transition>> rows(total);
  std::vector<std::size_t> s(static_cast<std::size_t>(L));
  for (std::size_t x = 0; x < total; ++x) {
    std::size_t rem = x;
    double w = 0.0;
    auto& lab = labels[x];
    lab.reserve(static_cast<std::size_t>(L) * space.label(0).size());
    for (int k = 0; k < L; ++k) {
      s[k] = rem % S;
      rem /= S;
      w += lv[k].class_log[s[k]] - lv[k].log_z;
      lab.insert(lab.end(), space.label(s[k]).begin(), space.label(s[k]).end());
    }
    slog[x] = w;
    auto& r = rows[x];
    for (int k = 0; k < L; ++k) {
      for (const auto& t : lv[k].rows[s[k]]) {
        r.push_back({x + t.to * stride[k] - s[k] * stride[k], p_level * t.p});
      }
    }
    if (p_swap == 0.0) continue;
    for (int k = 0; k < M; ++k) {
      const std::size_t a = s[k];
      const std::size_t b = s[k + 1];
      if (a == b) continue;
      const double dw = (lv[k].config_log[b] + lv[k + 1].config_log[a]) - (lv[k].config_log[a] + lv[k + 1].config_log[b]);
      const std::size_t y = x + b * stride[k] + a * stride[k + 1] - a * stride[k] - b * stride[k + 1];
      r.push_back({y, p_swap * metropolis_accept(dw)});
    }
  }
  auto params = ladder_params(ladder, restriction);
  params.emplace_back("swap_moves", options.swap_moves ? "true" : "false");
  return LumpedChain(space.is_points() ? StateKind::kPointProduct : StateKind::kProduct, std::move(labels),
                     std::move(slog), std::move(rows), "swap", std::move(params));
}

LumpedChain build_exp_level_chain(const ExpModel& model, double e) {
  validate(model);
  require(e >= 0.0 && e <= 1.0, ErrorCode::kInvalidArgument, "exponent must lie in [0, 1]");
  const ClassSpace space = ClassSpace::points(model);
  std::vector<double> w(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) w[i] = exp_log_weight(model, e, space.label(i)[0]);
  auto rows = detail::metropolis_rows(space, w);
  LumpedChain::Metadata params = {{"family", "exponential"}, {"C", fmt_double(model.C)},
                                  {"N", std::to_string(model.N)}, {"N_prime", std::to_string(model.N_prime)},
                                  {"exponent", fmt_double(e)}};
  return LumpedChain(StateKind::kPoint, space.labels(), std::move(w), std::move(rows), "exp_level",
                     std::move(params));
}

LumpedChain build_exp_swap_chain(const Ladder& ladder, const BuildOptions& options) {
  require(!ladder.is_potts(), ErrorCode::kUnsupportedKind, "build_exp_swap_chain needs an exponential ladder");
  return build_swap_chain(ladder, Restriction::kNone, options);
}

void write_sparse_triplets(const LumpedChain& chain, std::ostream& out) {
  out << std::setprecision(17);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const std::string from = chain.describe(i);
    bool diag_done = false;
    for (const auto& t : chain.row(i)) {
      if (!diag_done && t.to > i) {
        out << from << '\t' << from << '\t' << chain.diagonal(i) << '\n';
        diag_done = true;
      }
      out << from << '\t' << chain.describe(t.to) << '\t' << t.p << '\n';
    }
    if (!diag_done) out << from << '\t' << from << '\t' << chain.diagonal(i) << '\n';
  }
}

}  // namespace temperlab
