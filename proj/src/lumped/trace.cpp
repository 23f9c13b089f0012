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
#include <array>
#include <cmath>
#include <optional>

#include "level_space.hpp"
#include "temperlab/error.hpp"
#include "temperlab/lumped.hpp"

namespace temperlab {

using detail::ClassSpace;
using detail::LevelData;

namespace {

/// Argmin strictly between the two largest local maxima, ties to the larger
/// index. f is indexed by the traced value minus its minimum.
std::optional<int> interior_argmin(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<int> maxima;
  for (int v = 0; v < n; ++v) {
    const bool left = v == 0 || f[v] > f[v - 1];
    const bool right = v == n - 1 || f[v] >= f[v + 1];
    if (left && right) maxima.push_back(v);
  }
  if (maxima.size() < 2) return std::nullopt;
  std::stable_sort(maxima.begin(), maxima.end(), [&](int a, int b) { return f[a] > f[b]; });
  const int a = std::min(maxima[0], maxima[1]);
  const int b = std::max(maxima[0], maxima[1]);
  if (b - a < 2) return std::nullopt;
  int best = a + 1;
  for (int v = a + 1; v < b; ++v)
    if (f[v] <= f[best]) best = v;
  return best;
}

std::vector<double> ising_profile(const Ladder& ladder, int level) {
  const int n = ladder.potts().n;
  std::vector<double> f(static_cast<std::size_t>(n) + 1);
  for (int v = 0; v <= n; ++v) {
    const std::array<int, 2> c{v, n - v};
    f[v] = ladder.log_class_weight(level, c);
  }
  return f;
}

}  // namespace

TraceSpec trace_threshold(const Ladder& ladder) {
  TraceSpec spec;
  if (!ladder.is_potts()) {
    const auto& m = ladder.exp_model();
    spec.thresholds.assign(static_cast<std::size_t>(ladder.levels()), 0);
    spec.range_min = -m.N;
    spec.range_max = m.N_prime;
    return spec;
  }
  require(ladder.potts().q == 2, ErrorCode::kUnsupportedKind, "trace thresholds are defined for Ising (q = 2)");
  const int n = ladder.potts().n;
  const auto top = interior_argmin(ising_profile(ladder, ladder.M()));
  if (!top) throw Error(ErrorCode::kNoTrace, "level-M class distribution has no interior minimum");
  spec.range_min = 0;
  spec.range_max = n;
  spec.thresholds.resize(static_cast<std::size_t>(ladder.levels()));
  for (int i = 0; i < ladder.levels(); ++i) {
    const auto t = i == ladder.M() ? top : interior_argmin(ising_profile(ladder, i));
    spec.thresholds[i] = t.value_or(*top);
  }
  return spec;
}

LumpedChain build_trace_projection(const Ladder& ladder, const TraceSpec& trace) {
  const int L = ladder.levels();
  const int M = ladder.M();
  require(L <= 20, ErrorCode::kStateSpaceTooLarge, "trace projection supports at most 20 levels");
  require(static_cast<int>(trace.thresholds.size()) == L, ErrorCode::kInvalidArgument,
          "trace spec must have one threshold per level");
  require(!ladder.is_potts() || ladder.potts().q == 2, ErrorCode::kUnsupportedKind,
          "trace projection needs an Ising or exponential ladder");
  const ClassSpace space = detail::ladder_space(ladder, Restriction::kNone, kDefaultStateCap);
  const std::size_t S = space.size();

  std::vector<LevelData> lv;
  std::vector<std::vector<double>> rho(L, std::vector<double>(S));
  std::vector<std::vector<int>> side(L, std::vector<int>(S));
  std::vector<std::array<double, 2>> mass(L, {0.0, 0.0});
  std::vector<std::array<double, 2>> flip(L, {0.0, 0.0});  // conditioned exit probability of a level move
  for (int i = 0; i < L; ++i) {
    lv.push_back(detail::level_data(ladder, i, space, Restriction::kNone));
    std::array<double, 2> flow{0.0, 0.0};
    for (std::size_t s = 0; s < S; ++s) {
      rho[i][s] = std::exp(lv[i].class_log[s] - lv[i].log_z);
      side[i][s] = trace.bit(i, space.traced_value(s));
      mass[i][side[i][s]] += rho[i][s];
    }
    for (std::size_t s = 0; s < S; ++s)
      for (const auto& t : lv[i].rows[s])
        if (side[i][t.to] != side[i][s]) flow[side[i][s]] += rho[i][s] * t.p;
    require(mass[i][0] > 0.0 && mass[i][1] > 0.0, ErrorCode::kNoTrace,
            "trace threshold leaves one side empty at level " + std::to_string(i));
    for (int b = 0; b < 2; ++b) flip[i][b] = flow[b] / mass[i][b];
  }

  // swap[k][bk][bk1][ck][ck1]: probability that a swap of levels k, k+1 taken
  // from trace bits (bk, bk1) lands on (ck, ck1), conditioned on the source.
  using Quad = std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2>;
  std::vector<Quad> swap(static_cast<std::size_t>(std::max(M, 0)), Quad{});
  for (int k = 0; k < M; ++k) {
    Quad& g = swap[k];
    for (std::size_t a = 0; a < S; ++a) {
      for (std::size_t c = 0; c < S; ++c) {
        if (a == c) continue;
        const double dw = (lv[k].config_log[c] + lv[k + 1].config_log[a]) -
                          (lv[k].config_log[a] + lv[k + 1].config_log[c]);
        g[side[k][a]][side[k + 1][c]][side[k][c]][side[k + 1][a]] +=
            rho[k][a] * rho[k + 1][c] * detail::metropolis_accept(dw);
      }
    }
    for (int b0 = 0; b0 < 2; ++b0)
      for (int b1 = 0; b1 < 2; ++b1)
        for (auto& row : g[b0][b1])
          for (double& v : row) v /= mass[k][b0] * mass[k + 1][b1];
  }

  const std::size_t total = std::size_t{1} << L;
  const double p_level = 1.0 / (2.0 * L);
  const double p_swap = M > 0 ? 1.0 / (2.0 * M) : 0.0;
  std::vector<std::vector<int>> labels(total);
  std::vector<double> slog(total, 0.0);
  std::vector<std::vector<Transition>> rows(total);
  for (std::size_t x = 0; x < total; ++x) {
    auto bit = [&](int i) { return static_cast<int>((x >> i) & 1U); };
    for (int i = 0; i < L; ++i) {
      labels[x].push_back(bit(i));
      slog[x] += std::log(mass[i][bit(i)]);
      rows[x].push_back({x ^ (std::size_t{1} << i), p_level * flip[i][bit(i)]});
    }
    for (int k = 0; k < M; ++k) {
      const std::size_t cleared = x & ~((std::size_t{3}) << k);
      for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1) {
          const double p = swap[k][bit(k)][bit(k + 1)][c0][c1];
          if (p > 0.0) rows[x].push_back({cleared | (std::size_t(c0) << k) | (std::size_t(c1) << (k + 1)), p_swap * p});
        }
    }
  }
  LumpedChain::Metadata params = {{"M", std::to_string(M)}, {"ladder", ladder_kind_name(ladder.kind())}};
  return LumpedChain(StateKind::kTrace, std::move(labels), std::move(slog), std::move(rows), "trace_projection",
                     std::move(params));
}

}  // namespace temperlab
