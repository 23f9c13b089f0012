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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "temperlab/analysis.hpp"
#include "temperlab/error.hpp"
#include "temperlab/lumped.hpp"

using namespace temperlab;

namespace {

std::size_t find_state(const LumpedChain& c, const std::vector<int>& label) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.label(i) == label) return i;
  ADD_FAILURE() << "state not found";
  return 0;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::kInvalidArgument;
}

SpectralOptions dense_opts() {
  SpectralOptions o;
  o.method = EigenMethod::kDense;
  return o;
}

std::vector<double> chain_pi(const LumpedChain& c) { return stationary(c); }

}  // namespace

TEST(LevelChain, IsingTwoVerticesZeroBeta) {
  const Ladder l = make_ladder(ising_model(2, 0.0), 0, LadderKind::kTempered);
  const LumpedChain c = build_level_chain(l, 0);
  const std::size_t a = find_state(c, {2, 0});
  const std::size_t b = find_state(c, {1, 1});
  EXPECT_NEAR(c.probability(a, b), 0.5, 1e-15);
  EXPECT_NEAR(c.probability(b, a), 0.25, 1e-15);
  const auto pi = chain_pi(c);
  EXPECT_NEAR(pi[a], 0.25, 1e-15);
  EXPECT_NEAR(pi[b], 0.5, 1e-15);
}

TEST(LevelChain, MatchesBruteForceLumping) {
  for (int q = 2; q <= 3; ++q)
    for (int n = 2; n <= (q == 2 ? 8 : 5); ++n)
      for (double beta : {0.0, 1.0 / n, 4.0 / n})
        for (double h : {0.0, 0.3}) {
          std::vector<double> fields(static_cast<std::size_t>(q), 0.0);
          fields[0] = h;
          const Ladder l = make_ladder(PottsModel::with_beta(q, n, beta, fields), 0, LadderKind::kTempered);
          const LumpedChain c = build_level_chain(l, 0);
          c.validate();
          const auto full = oracle::full_metropolis(q, n, beta, fields);
          const auto masses = oracle::class_masses(full);
          const auto pi = chain_pi(c);
          for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(pi[i], masses.at(c.label(i)), 1e-9);
          EXPECT_NEAR(spectral_gap(c).gap, oracle::reversible_gap(full.P, full.pi), 1e-8)
              << "q=" << q << " n=" << n << " beta=" << beta << " h=" << h;
        }
}

TEST(LevelChain, ZeroBetaStationaryIsMultinomial) {
  const int n = 7;
  const Ladder l = make_ladder(PottsModel::with_beta(3, n, 0.0), 0, LadderKind::kTempered);
  const LumpedChain c = build_level_chain(l, 0);
  const auto pi = chain_pi(c);
  for (std::size_t i = 0; i < c.size(); ++i)
    EXPECT_NEAR(pi[i], static_cast<double>(oracle::exact_multinomial(c.label(i))) / std::pow(3.0, n), 1e-14);
}

TEST(LevelChain, RgbOrderedModeAtLargeMu) {
  const Ladder l = make_ladder(PottsModel::with_mu(3, 12, 8.0), 0, LadderKind::kTempered);
  const LumpedChain c = build_level_chain(l, 0, Restriction::kRgb);
  c.validate();
  const auto pi = chain_pi(c);
  const std::size_t top = static_cast<std::size_t>(std::max_element(pi.begin(), pi.end()) - pi.begin());
  EXPECT_EQ(c.label(top), (std::vector<int>{12, 0, 0}));
  double near = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.label(i)[0] >= 10) near += pi[i];
  EXPECT_GT(near, 0.99);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_TRUE(c.label(i)[0] >= c.label(i)[1] && c.label(i)[1] >= c.label(i)[2]);
}

TEST(LevelChain, RgbNeedsThreeColors) {
  const Ladder l = make_ladder(ising_model(4, 0.1), 0, LadderKind::kTempered);
  EXPECT_EQ(code_of([&] { build_level_chain(l, 0, Restriction::kRgb); }), ErrorCode::kUnsupportedKind);
}

TEST(TemperingChain, SingleLevelIsLazyLevelChain) {
  const Ladder l = make_ladder(PottsModel::with_mu(3, 6, 2.9), 0, LadderKind::kTempered);
  const LumpedChain t = build_tempering_chain(l);
  const LumpedChain c = build_level_chain(l, 0);
  ASSERT_EQ(t.size(), c.size());
  const Eigen::MatrixXd want = 0.5 * c.dense() + 0.5 * Eigen::MatrixXd::Identity(c.size(), c.size());
  EXPECT_LT((t.dense() - want).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(spectral_gap(t).gap, 0.5 * spectral_gap(c).gap, 1e-12);
}

TEST(TemperingChain, SingleVertexAcceptsEveryTemperatureMove) {
  const Ladder l = make_ladder(PottsModel::with_beta(3, 1, 2.7), 3, LadderKind::kTempered);
  const LumpedChain t = build_tempering_chain(l);
  for (std::size_t x = 0; x < t.size(); ++x) {
    const int level = t.label(x).back();
    std::vector<int> up = t.label(x);
    up.back() = level + 1;
    if (level < 3) EXPECT_NEAR(t.probability(x, find_state(t, up)), 0.25, 1e-15);
  }
}

TEST(TemperingChain, UniformLevelMarginalAndInvariants) {
  const std::vector<Ladder> ladders = {
      make_ladder(PottsModel::with_mu(3, 12, 2.9), 12, LadderKind::kTempered),
      make_ladder(ising_model(10, 0.4, 0.3), 10, LadderKind::kDampened),
      make_ladder(ExpModel{2.0, 5, 4}, 4, LadderKind::kTempered),
  };
  for (const auto& l : ladders)
    for (Restriction r : {Restriction::kNone, Restriction::kRgb}) {
      if (r == Restriction::kRgb && (!l.is_potts() || l.potts().q != 3)) continue;
      const LumpedChain t = build_tempering_chain(l, r);
      t.validate();
      const auto pi = chain_pi(t);
      std::vector<double> marginal(static_cast<std::size_t>(l.levels()), 0.0);
      for (std::size_t x = 0; x < t.size(); ++x) marginal[t.label(x).back()] += pi[x];
      for (double m : marginal) EXPECT_NEAR(m, 1.0 / l.levels(), 1e-12);
    }
}

TEST(SwapChain, AcceptanceExamples) {
  // Ising n = 5: H(4,1) = 6 + 0, H(3,2) = 3 + 1, so H difference 2; beta_1 - beta_0 = 0.1.
  const Ladder l = make_ladder(ising_model(5, 0.1), 1, LadderKind::kTempered);
  const LumpedChain s = build_swap_chain(l);
  s.validate();
  const std::size_t a = find_state(s, {4, 1, 3, 2});
  const std::size_t b = find_state(s, {3, 2, 4, 1});
  EXPECT_NEAR(s.probability(a, b), 0.5 * 1.0, 1e-15);
  EXPECT_NEAR(s.probability(b, a), 0.5 * std::exp(-0.2), 1e-15);

  const Ladder flat = make_ladder(PottsModel::with_beta(3, 3, 0.0), 2, LadderKind::kTempered);
  const LumpedChain f = build_swap_chain(flat);
  const std::size_t x = find_state(f, {3, 0, 0, 1, 1, 1, 0, 0, 3});
  const std::size_t y = find_state(f, {1, 1, 1, 3, 0, 0, 0, 0, 3});
  EXPECT_NEAR(f.probability(x, y), 0.25, 1e-15);
}

TEST(SwapChain, ProductStationary) {
  const Ladder l = make_ladder(ising_model(4, 1.0, 0.3), 2, LadderKind::kDampened);
  const LumpedChain s = build_swap_chain(l);
  s.validate();
  const auto pi = chain_pi(s);
  std::vector<std::vector<double>> d;
  for (int i = 0; i <= 2; ++i) d.push_back(l.class_distribution(i));
  for (std::size_t x = 0; x < s.size(); ++x) {
    const auto& lab = s.label(x);
    double want = 1.0;
    for (int i = 0; i <= 2; ++i) {
      const std::array<int, 2> c{lab[2 * i], lab[2 * i + 1]};
      want *= d[i][sigma_rank(c)];
    }
    EXPECT_NEAR(pi[x], want, 1e-12);
  }
}

TEST(SwapChain, ProductGapLawWithoutSwaps) {
  for (int n : {3, 4, 5}) {
    const Ladder l = make_ladder(ising_model(n, 4.0 / n, 0.3), 2, LadderKind::kTempered);
    BuildOptions o;
    o.swap_moves = false;
    const LumpedChain s = build_swap_chain(l, Restriction::kNone, o);
    s.validate();
    double min_gap = 1.0;
    for (int i = 0; i <= 2; ++i) min_gap = std::min(min_gap, spectral_gap(build_level_chain(l, i), dense_opts()).gap);
    EXPECT_NEAR(spectral_gap(s, dense_opts()).gap, min_gap / 3.0, 1e-8);
  }
}

TEST(SwapChain, CapDirectsToProjection) {
  const Ladder l = make_ladder(PottsModel::with_beta(3, 12, 0.1), 4, LadderKind::kTempered);
  EXPECT_EQ(code_of([&] { build_swap_chain(l); }), ErrorCode::kStateSpaceTooLarge);
}

TEST(ExpChains, LevelExamples) {
  const ExpModel m{2.0, 3, 3};
  const LumpedChain flat = build_exp_level_chain(m, 0.0);
  flat.validate();
  for (double p : chain_pi(flat)) EXPECT_NEAR(p, 1.0 / 7.0, 1e-15);
  EXPECT_NEAR(flat.diagonal(0), 0.5, 1e-15);
  EXPECT_NEAR(flat.diagonal(6), 0.5, 1e-15);

  const LumpedChain c = build_exp_level_chain(m, 1.0);
  const std::size_t zero = find_state(c, {0});
  const std::size_t one = find_state(c, {1});
  EXPECT_NEAR(c.probability(one, zero), 0.25, 1e-15);
  EXPECT_NEAR(c.probability(zero, one), 0.5, 1e-15);
}

TEST(ExpChains, SwapExamples) {
  const Ladder l = make_ladder(ExpModel{2.0, 1, 1}, 1, LadderKind::kTempered);
  const LumpedChain s = build_exp_swap_chain(l);
  s.validate();
  ASSERT_EQ(s.size(), 9u);
  const auto pi = chain_pi(s);
  const auto d0 = l.class_distribution(0);
  const auto d1 = l.class_distribution(1);
  for (std::size_t x = 0; x < 9; ++x) EXPECT_NEAR(pi[x], d0[s.label(x)[0] + 1] * d1[s.label(x)[1] + 1], 1e-15);
  EXPECT_NEAR(s.probability(find_state(s, {-1, 1}), find_state(s, {1, -1})), 0.5, 1e-15);

  const Ladder l4 = make_ladder(ExpModel{4.0, 2, 2}, 1, LadderKind::kTempered);
  const LumpedChain s4 = build_exp_swap_chain(l4);
  EXPECT_NEAR(spectral_gap(s4).gap, oracle::dense_reversible_gap(s4.dense(), chain_pi(s4)), 1e-12);
}

TEST(Trace, Thresholds) {
  const int n = 10;
  const Ladder sym = make_ladder(ising_model(n, 4.0 / n), 3, LadderKind::kTempered);
  EXPECT_EQ(trace_threshold(sym).thresholds.back(), n / 2);

  const TraceSpec e = trace_threshold(make_ladder(ExpModel{2.0, 3, 4}, 2, LadderKind::kTempered));
  for (int t : e.thresholds) EXPECT_EQ(t, 0);
  EXPECT_EQ(e.bit(0, 0), 1);
  EXPECT_EQ(e.bit(0, -1), 0);

  // Interior argmin of the 25-point profile, scanned independently.
  const int m = 24;
  const double beta = 2.0 * ising_critical_beta(m);
  const Ladder l = make_ladder(ising_model(m, beta, 0.3), m, LadderKind::kDampened);
  std::vector<double> f(m + 1);
  for (int v = 0; v <= m; ++v)
    f[v] = std::lgamma(m + 1.0) - std::lgamma(v + 1.0) - std::lgamma(m - v + 1.0) +
           beta * (v * (v - 1) / 2.0 + (m - v) * (m - v - 1) / 2.0 + 0.3 * v);
  const int peak_lo = static_cast<int>(std::max_element(f.begin(), f.begin() + m / 2) - f.begin());
  const int peak_hi = static_cast<int>(std::max_element(f.begin() + m / 2, f.end()) - f.begin());
  const int valley = static_cast<int>(std::min_element(f.begin() + peak_lo + 1, f.begin() + peak_hi) - f.begin());
  const TraceSpec t = trace_threshold(l);
  for (int th : t.thresholds) EXPECT_EQ(th, valley);
  EXPECT_GT(valley, 0);
  EXPECT_LT(valley, m);

  EXPECT_EQ(code_of([] { trace_threshold(make_ladder(ising_model(8, 0.05), 2, LadderKind::kTempered)); }),
            ErrorCode::kNoTrace);
}

TEST(Trace, SymmetricIsingProjectionIsUniform) {
  const int n = 7;
  const Ladder l = make_ladder(ising_model(n, 4.0 / n), 3, LadderKind::kDampened);
  const TraceSpec t = trace_threshold(l);
  for (int th : t.thresholds) EXPECT_EQ(th, (n + 1) / 2);
  const LumpedChain p = build_trace_projection(l, t);
  p.validate();
  for (double v : chain_pi(p)) EXPECT_NEAR(v, 1.0 / 16.0, 1e-12);
  // Equal adjacent bits never change under a swap.
  const std::size_t x = find_state(p, {1, 1, 1, 1});
  for (const auto& tr : p.row(x)) {
    int diff = 0;
    for (int i = 0; i < 4; ++i) diff += p.label(x)[i] != p.label(tr.to)[i];
    EXPECT_EQ(diff, 1);
  }
}

TEST(Trace, ProjectionMatchesLumpedSwapChain) {
  const std::vector<Ladder> ladders = {
      make_ladder(ExpModel{2.0, 1, 1}, 1, LadderKind::kTempered),
      make_ladder(ExpModel{3.0, 2, 3}, 2, LadderKind::kTempered),
      make_ladder(ising_model(5, 0.8, 0.3), 2, LadderKind::kDampened),
      make_ladder(ising_model(6, 0.7), 1, LadderKind::kTempered),
  };
  for (const auto& l : ladders) {
    TraceSpec t;
    if (l.is_potts()) {
      t.thresholds.assign(static_cast<std::size_t>(l.levels()), l.potts().n / 2);
    } else {
      t = trace_threshold(l);
    }
    const LumpedChain proj = build_trace_projection(l, t);
    proj.validate();
    const LumpedChain full = build_swap_chain(l);
    std::vector<int> part(full.size());
    const std::size_t stride = full.label(0).size() / static_cast<std::size_t>(l.levels());
    for (std::size_t x = 0; x < full.size(); ++x) {
      int code = 0;
      for (int i = 0; i < l.levels(); ++i) code |= t.bit(i, full.label(x)[i * stride]) << i;
      part[x] = code;
    }
    const Eigen::MatrixXd want = oracle::lump(full.dense(), chain_pi(full), part, 1 << l.levels());
    EXPECT_LT((proj.dense() - want).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(LambdaMin, DiscreteValleyAtLargeN) {
  const auto [lo, hi] = asymptotic_lambda_min(2.9);
  EXPECT_NEAR(lo, 0.385144, 1e-5);
  EXPECT_NEAR(hi, 0.768474, 1e-5);
  const int n = 240;
  const LambdaPoints p = find_lambda_min(PottsModel::with_mu(3, n, 2.9));
  EXPECT_FALSE(p.asymptotic);
  EXPECT_NEAR(p.lambda_min(), 0.39, 0.02);
  EXPECT_NEAR(p.lambda_max(), hi, 0.02);
  // Independent scan of the same parity line with lgamma.
  const double beta = 2.9 / n;
  double best = 1e300;
  int arg = -1;
  bool rising = false;
  double prev = 1e300;
  for (int t = n / 3; t <= n && !rising; t += 2) {
    const int r = (n - t) / 2;
    const double w = std::lgamma(n + 1.0) - std::lgamma(t + 1.0) - 2 * std::lgamma(r + 1.0) +
                     beta / 2.0 * (1.0 * t * t + 2.0 * r * r);
    if (w > prev && arg >= 0) rising = true;
    if (w < best) {
      best = w;
      arg = t;
    }
    prev = w;
  }
  EXPECT_EQ(p.t_min, arg);
}

TEST(LambdaMin, WindowAndDivisibilityErrors) {
  EXPECT_EQ(code_of([] { find_lambda_min(PottsModel::with_mu(3, 120, 2.0)); }), ErrorCode::kWindow);
  EXPECT_EQ(code_of([] { find_lambda_min(PottsModel::with_mu(3, 120, 6.0)); }), ErrorCode::kWindow);
  EXPECT_EQ(code_of([] { find_lambda_min(PottsModel::with_mu(3, 30, 2.9)); }), ErrorCode::kDivisibility);
  EXPECT_EQ(code_of([] { asymptotic_lambda_min(3.5); }), ErrorCode::kWindow);
  const LambdaPoints small = lambda_points(PottsModel::with_mu(3, 12, 2.9));
  EXPECT_TRUE(small.asymptotic);
  EXPECT_EQ(small.t_min, 5);
}

TEST(Flattened, WeightsAndGapGrowth) {
  double prev_ratio = 0.0;
  for (int n : {72, 96, 120}) {
    const PottsModel m = PottsModel::with_mu(3, n, 2.9);
    const FlattenedWeights w = flattened_weights(m);
    double k_weight = 0.0;
    bool seen = false;
    for (std::size_t i = 0; i < w.classes.size(); ++i) {
      if (!w.in_k[i]) {
        EXPECT_EQ(w.flattened_log[i], w.original_log[i]);
        continue;
      }
      if (seen) EXPECT_EQ(w.flattened_log[i], k_weight);
      k_weight = w.flattened_log[i];
      seen = true;
    }
    EXPECT_TRUE(seen);
    const LumpedChain f = build_flattened_level_chain(m);
    f.validate();
    const Ladder l = make_ladder(m, 0, LadderKind::kTempered);
    const double ratio = spectral_gap(f).gap / spectral_gap(build_level_chain(l, 0, Restriction::kRgb)).gap;
    EXPECT_GT(ratio, prev_ratio);
    prev_ratio = ratio;
  }
}

TEST(SparseDump, WritesEveryEntry) {
  const LumpedChain c = build_level_chain(make_ladder(ising_model(2, 0.0), 0, LadderKind::kTempered), 0);
  std::ostringstream os;
  write_sparse_triplets(c, os);
  const std::string s = os.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 7);
  EXPECT_NE(s.find("(2 0)\t(1 1)\t0.5"), std::string::npos);
}
