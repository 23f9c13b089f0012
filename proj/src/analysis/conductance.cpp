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

#include <algorithm>
#include <cmath>
#include <map>

#include "temperlab/analysis.hpp"
#include "temperlab/error.hpp"
#include "temperlab/log_math.hpp"
#include "temperlab/sigma.hpp"

namespace temperlab {

namespace {

ConductanceReport finish(double log_flow, double log_capacity) {
  ConductanceReport r;
  r.log_flow = log_flow;
  r.log_capacity = log_capacity;
  r.flow = std::exp(log_flow);
  r.capacity = std::exp(log_capacity);
  r.phi = std::min(1.0, std::exp(log_flow - log_capacity));
  return r;
}

}  // namespace

ConductanceReport conductance(const LumpedChain& chain, const CutSet& cut) {
  require(cut.size() == chain.size(), ErrorCode::kInvalidArgument, "cut does not match the chain");
  const auto slog = chain.stationary_log();
  const double lz = log_sum_exp(slog);
  LogSumAccumulator flow;
  LogSumAccumulator cap;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!cut.contains(i)) continue;
    cap.add(slog[i] - lz);
    for (const auto& t : chain.row(i))
      if (!cut.contains(t.to)) flow.add(slog[i] - lz + std::log(t.p));
  }
  ConductanceReport r = finish(flow.value(), cap.value());
  r.family = cut.family();
  r.cut = cut;
  return r;
}

ThresholdFamily label_component_family(const LumpedChain& chain, std::size_t component, std::string name) {
  ThresholdFamily f{std::move(name), std::vector<double>(chain.size())};
  for (std::size_t i = 0; i < chain.size(); ++i) {
    require(component < chain.label(i).size(), ErrorCode::kInvalidArgument, "label component out of range");
    f.score[i] = chain.label(i)[component];
  }
  return f;
}

ThresholdFamily trace_weight_family(const LumpedChain& chain) {
  ThresholdFamily f{"trace weight", std::vector<double>(chain.size())};
  for (std::size_t i = 0; i < chain.size(); ++i) {
    double s = 0.0;
    for (int b : chain.label(i)) s += b;
    f.score[i] = s;
  }
  return f;
}

ConductanceReport min_threshold_conductance(const LumpedChain& chain, const ThresholdFamily& family) {
  require(family.score.size() == chain.size(), ErrorCode::kInvalidArgument, "family does not match the chain");
  std::vector<double> values(family.score);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  require(values.size() >= 2, ErrorCode::kDegenerate, "threshold family '" + family.name + "' has a single value");

  std::optional<ConductanceReport> best;
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double t = values[k];
    std::vector<char> m(chain.size());
    for (std::size_t i = 0; i < chain.size(); ++i) m[i] = family.score[i] < t ? 1 : 0;
    CutSet s(std::move(m), family.name);
    ConductanceReport r = conductance(chain, s);
    if (r.log_capacity > std::log(0.5)) {
      const CutSet c = s.complement();
      r = conductance(chain, c);
    }
    r.threshold = t;
    r.family = family.name;
    if (!best || r.log_flow - r.log_capacity < best->log_flow - best->log_capacity) best = std::move(r);
  }
  return *best;
}

ConductanceReport exhaustive_conductance(const LumpedChain& chain) {
  const std::size_t n = chain.size();
  require(n >= 2 && n <= 18, ErrorCode::kStateSpaceTooLarge, "exhaustive conductance needs 2..18 states");
  const auto slog = chain.stationary_log();
  const double lz = log_sum_exp(slog);
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) pi[i] = std::exp(slog[i] - lz);
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 1; mask + 1 < (1U << n); ++mask) {
    double cap = 0.0;
    double flow = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1U)) continue;
      cap += pi[i];
      for (const auto& t : chain.row(i))
        if (!((mask >> t.to) & 1U)) flow += pi[i] * t.p;
    }
    if (cap > 0.5 || cap <= 0.0) continue;
    if (flow / cap < best) {
      best = flow / cap;
      best_mask = mask;
    }
  }
  std::vector<char> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = (best_mask >> i) & 1U;
  return conductance(chain, CutSet(std::move(m), "exhaustive"));
}

ConductanceReport tempering_sigma_cut_conductance(const PottsModel& model, int M, LadderKind kind,
                                                  const std::function<bool(std::span<const int>)>& in_cut,
                                                  std::string family) {
  validate(model);
  require(M >= 0, ErrorCode::kInvalidArgument, "M must be non-negative");
  const int L = M + 1;
  std::vector<double> e(static_cast<std::size_t>(L), 1.0);
  for (int i = 0; i < L && M > 0; ++i) e[i] = static_cast<double>(i) / M;
  const int q = model.q;
  const double n = model.n;

  // One pass: per level, the partition, the cut mass, and the boundary flow
  // of the level moves (temperature moves keep sigma and never cross).
  std::vector<LogSumAccumulator> z(L), cap(L), flow(L);
  std::vector<int> c2(static_cast<std::size_t>(q));
  std::vector<double> w(static_cast<std::size_t>(L));
  std::size_t members = 0;
  std::size_t total = 0;
  for_each_sigma(model.n, q, [&](std::span<const int> c) {
    ++total;
    const double lm = log_multinomial(c);
    const double bh = bar_hamiltonian(c);
    const double ft = field_term(c, model.fields);
    for (int i = 0; i < L; ++i) {
      w[i] = class_weight_from_parts(kind, e[i], model, lm, bh, ft);
      z[i].add(w[i]);
    }
    if (!in_cut(c)) return;
    ++members;
    for (int i = 0; i < L; ++i) cap[i].add(w[i]);
    for (int a = 0; a < q; ++a) {
      if (c[a] == 0) continue;
      for (int b = 0; b < q; ++b) {
        if (b == a) continue;
        c2.assign(c.begin(), c.end());
        --c2[a];
        ++c2[b];
        if (in_cut(c2)) continue;
        const double lm2 = log_multinomial(c2);
        const double bh2 = bar_hamiltonian(c2);
        const double ft2 = field_term(c2, model.fields);
        for (int i = 0; i < L; ++i) {
          const double d = (class_weight_from_parts(kind, e[i], model, lm2, bh2, ft2) - lm2) - (w[i] - lm);
          // pi(sigma, i) * (1/2) * (sigma_a / n)(1/q) * min(1, e^d)
          flow[i].add(w[i] + std::log(0.5 * c[a] / n / q) + std::min(0.0, d));
        }
      }
    }
  });
  require(members > 0 && members < total, ErrorCode::kDegenerate, "cut '" + family + "' is empty or full");
  LogSumAccumulator f_all, c_all;
  for (int i = 0; i < L; ++i) {
    const double lz = z[i].value() + std::log(static_cast<double>(L));
    f_all.add(flow[i].value() - lz);
    c_all.add(cap[i].value() - lz);
  }
  ConductanceReport r = finish(f_all.value(), c_all.value());
  r.family = std::move(family);
  return r;
}

}  // namespace temperlab
