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

#include "temperlab/analysis.hpp"
#include "temperlab/error.hpp"
#include "temperlab/log_math.hpp"

namespace temperlab {

namespace {

int part_count(const LumpedChain& chain, std::span<const int> part) {
  require(part.size() == chain.size(), ErrorCode::kInvalidArgument, "partition does not match the chain");
  const int k = *std::max_element(part.begin(), part.end()) + 1;
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  for (int p : part) {
    require(p >= 0, ErrorCode::kInvalidArgument, "partition labels must be non-negative");
    seen[p] = 1;
  }
  require(std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }), ErrorCode::kInvalidArgument,
          "partition labels must be 0..K-1 with every part non-empty");
  return k;
}

}  // namespace

LumpedChain restriction_chain(const LumpedChain& chain, std::span<const int> part, int which) {
  part_count(chain, part);
  std::vector<long> local(chain.size(), -1);
  std::vector<std::vector<int>> labels;
  std::vector<double> slog;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (part[i] != which) continue;
    local[i] = static_cast<long>(labels.size());
    labels.push_back(chain.label(i));
    slog.push_back(chain.stationary_log()[i]);
  }
  require(!labels.empty(), ErrorCode::kInvalidArgument, "empty part");
  std::vector<std::vector<Transition>> rows(labels.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (local[i] < 0) continue;
    for (const auto& t : chain.row(i))
      if (local[t.to] >= 0) rows[local[i]].push_back({static_cast<std::size_t>(local[t.to]), t.p});
  }
  return LumpedChain(chain.kind(), std::move(labels), std::move(slog), std::move(rows), "restriction",
                     {{"part", std::to_string(which)}});
}

LumpedChain projection_chain(const LumpedChain& chain, std::span<const int> part) {
  const int K = part_count(chain, part);
  const double lz = log_sum_exp(chain.stationary_log());
  std::vector<double> pi(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) pi[i] = std::exp(chain.stationary_log()[i] - lz);
  std::vector<double> mass(static_cast<std::size_t>(K), 0.0);
  for (std::size_t i = 0; i < chain.size(); ++i) mass[part[i]] += pi[i];
  std::vector<std::vector<double>> flow(static_cast<std::size_t>(K), std::vector<double>(static_cast<std::size_t>(K), 0.0));
  for (std::size_t i = 0; i < chain.size(); ++i)
    for (const auto& t : chain.row(i))
      if (part[t.to] != part[i]) flow[part[i]][part[t.to]] += pi[i] * t.p;
  std::vector<std::vector<int>> labels(static_cast<std::size_t>(K));
  std::vector<double> slog(static_cast<std::size_t>(K));
  std::vector<std::vector<Transition>> rows(static_cast<std::size_t>(K));
  for (int a = 0; a < K; ++a) {
    labels[a] = {a};
    slog[a] = std::log(mass[a]);
    for (int b = 0; b < K; ++b)
      if (b != a && flow[a][b] > 0.0) rows[a].push_back({static_cast<std::size_t>(b), flow[a][b] / mass[a]});
  }
  return LumpedChain(StateKind::kGeneric, std::move(labels), std::move(slog), std::move(rows), "projection");
}

DecompositionReport decomposition_check(const LumpedChain& chain, std::span<const int> part) {
  const int K = part_count(chain, part);
  require(K >= 2, ErrorCode::kInvalidArgument, "decomposition needs at least two parts");
  SpectralOptions dense;
  dense.method = EigenMethod::kDense;
  DecompositionReport r;
  r.gap = spectral_gap(chain, dense).gap;
  r.projection_gap = spectral_gap(projection_chain(chain, part), dense).gap;
  r.min_restriction_gap = 1.0;
  for (int k = 0; k < K; ++k)
    r.min_restriction_gap = std::min(r.min_restriction_gap, spectral_gap(restriction_chain(chain, part, k), dense).gap);
  r.rhs = 0.5 * r.projection_gap * r.min_restriction_gap;
  r.holds = r.gap >= r.rhs * (1.0 - 1e-12) - 1e-15;
  return r;
}

}  // namespace temperlab
