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

#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "temperlab/analysis.hpp"
#include "temperlab/error.hpp"
#include "temperlab/lumped.hpp"

using namespace temperlab;

namespace {

LumpedChain from_matrix(const Eigen::MatrixXd& P) {
  // Stationary vector of a small reversible matrix by the oracle-free route:
  // solve pi (P - I) = 0 with sum pi = 1.
  const Eigen::Index n = P.rows();
  Eigen::MatrixXd A = (P - Eigen::MatrixXd::Identity(n, n)).transpose();
  A.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b[n - 1] = 1.0;
  const Eigen::VectorXd pi = A.fullPivLu().solve(b);
  std::vector<double> v(pi.data(), pi.data() + n);
  return chain_from_dense(P, v);
}

SpectralOptions with_method(EigenMethod m) {
  SpectralOptions o;
  o.method = m;
  return o;
}

std::vector<LumpedChain> sample_chains() {
  std::vector<LumpedChain> out;
  out.push_back(build_level_chain(make_ladder(ising_model(12, 4.0 / 12, 0.3), 0, LadderKind::kTempered), 0));
  out.push_back(build_level_chain(make_ladder(PottsModel::with_mu(3, 24, 2.9), 0, LadderKind::kTempered), 0,
                                  Restriction::kRgb));
  out.push_back(build_tempering_chain(make_ladder(PottsModel::with_mu(3, 12, 2.9), 12, LadderKind::kTempered),
                                      Restriction::kRgb));
  out.push_back(build_tempering_chain(make_ladder(ising_model(10, 0.4, 0.3), 10, LadderKind::kDampened)));
  out.push_back(build_swap_chain(make_ladder(ising_model(4, 1.0), 2, LadderKind::kTempered)));
  out.push_back(build_exp_level_chain(ExpModel{2.0, 6, 6}, 1.0));
  return out;
}

}  // namespace

TEST(Stationary, Examples) {
  Eigen::MatrixXd P(2, 2);
  P << 0.5, 0.5, 0.5, 0.5;
  const auto pi = stationary(from_matrix(P));
  EXPECT_NEAR(pi[0], 0.5, 1e-15);
  EXPECT_NEAR(pi[1], 0.5, 1e-15);
  const auto ising = stationary(build_level_chain(make_ladder(ising_model(2, 0.0), 0, LadderKind::kTempered), 0));
  EXPECT_NEAR(ising[0], 0.25, 1e-15);
  EXPECT_NEAR(ising[1], 0.5, 1e-15);
  EXPECT_NEAR(ising[2], 0.25, 1e-15);
}

TEST(Stationary, RejectsWrongWeights) {
  Eigen::MatrixXd P(2, 2);
  P << 0.9, 0.1, 0.2, 0.8;
  const std::vector<double> wrong = {0.5, 0.5};
  EXPECT_THROW(stationary(chain_from_dense(P, wrong)), Error);
}

TEST(SpectralGap, Examples) {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_NEAR(spectral_gap(chain_from_dense(I, std::vector<double>(4, 0.25))).gap, 0.0, 1e-15);
  const Eigen::MatrixXd U = Eigen::MatrixXd::Constant(5, 5, 0.2);
  EXPECT_NEAR(spectral_gap(from_matrix(U)).gap, 1.0, 1e-12);
  Eigen::MatrixXd P(2, 2);
  P << 0.9, 0.1, 0.2, 0.8;
  const SpectralReport r = spectral_gap(from_matrix(P));
  EXPECT_NEAR(r.gap, 0.3, 1e-14);
  EXPECT_NEAR(r.lambda1_abs, 0.7, 1e-14);
}

TEST(SpectralGap, NegativeEigenvalueCounts) {
  Eigen::MatrixXd P(2, 2);
  P << 0.1, 0.9, 0.9, 0.1;
  EXPECT_NEAR(spectral_gap(from_matrix(P)).gap, 0.2, 1e-14);
}

TEST(SpectralGap, IterativeAgreesWithDense) {
  for (const auto& c : sample_chains()) {
    const SpectralReport d = spectral_gap(c, with_method(EigenMethod::kDense));
    const SpectralReport it = spectral_gap(c, with_method(EigenMethod::kIterative));
    EXPECT_TRUE(it.converged);
    EXPECT_LE(it.residual, 1e-10);
    EXPECT_NEAR(it.gap, d.gap, 1e-8) << c.builder() << " " << c.size();
    EXPECT_NEAR(d.gap, oracle::dense_reversible_gap(c.dense(), stationary(c)), 1e-10);
  }
}

TEST(Conductance, TwoStateAndComplement) {
  Eigen::MatrixXd P(2, 2);
  P << 0.75, 0.25, 0.25, 0.75;
  const LumpedChain c = from_matrix(P);
  const CutSet s({1, 0}, "first");
  const ConductanceReport r = conductance(c, s);
  EXPECT_NEAR(r.phi, 0.25, 1e-15);
  EXPECT_NEAR(r.phi, r.flow / r.capacity, 1e-15);
  EXPECT_THROW(CutSet({1, 1}, "full"), Error);
  EXPECT_THROW(CutSet({0, 0}, "empty"), Error);
}

TEST(Conductance, FlowSymmetryAndCheegerUpperBound) {
  for (const auto& c : sample_chains()) {
    const double gap = spectral_gap(c).gap;
    const auto fam = label_component_family(c, 0, "label[0]");
    std::vector<double> values(fam.score);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (std::size_t k = 1; k < values.size(); ++k) {
      std::vector<char> m(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) m[i] = fam.score[i] < values[k];
      const CutSet s(m, "t");
      const ConductanceReport a = conductance(c, s);
      const ConductanceReport b = conductance(c, s.complement());
      EXPECT_NEAR(a.log_flow, b.log_flow, 1e-12);
      const ConductanceReport& light = a.capacity <= 0.5 ? a : b;
      EXPECT_LE(gap, 2.0 * light.phi * (1.0 + 1e-12));
    }
  }
}

TEST(Conductance, CheegerLowerBoundOnCertifiedChains) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rc = oracle::random_reversible_chain(4 + trial % 9, rng);
    const LumpedChain c = chain_from_dense(rc.P, rc.pi);
    const ConductanceReport phi = exhaustive_conductance(c);
    const double gap = spectral_gap(c).gap;
    EXPECT_LE(phi.phi * phi.phi / 2.0, gap * (1.0 + 1e-12));
    EXPECT_LE(gap, 2.0 * phi.phi * (1.0 + 1e-12));
  }
  const LumpedChain ising = build_level_chain(make_ladder(ising_model(12, 0.4), 0, LadderKind::kTempered), 0);
  const ConductanceReport ex = exhaustive_conductance(ising);
  const ConductanceReport fam = min_threshold_conductance(ising, label_component_family(ising, 0, "sigma_1"));
  EXPECT_LE(ex.phi, fam.phi * (1.0 + 1e-12));
  EXPECT_LE(ex.phi * ex.phi / 2.0, spectral_gap(ising).gap);
}

TEST(Conductance, ThresholdFamilyExamples) {
  const int n = 16;
  const LumpedChain c = build_level_chain(make_ladder(ising_model(n, 8.0 / n), 0, LadderKind::kTempered), 0);
  const ConductanceReport r = min_threshold_conductance(c, label_component_family(c, 0, "sigma_1"));
  // Symmetric bimodal: the cut passes through the equator class on either side.
  EXPECT_GE(r.threshold, n / 2);
  EXPECT_LE(r.threshold, n / 2 + 1);
  EXPECT_LE(r.capacity, 0.5 + 1e-12);

  for (int m : {8, 16, 32}) {
    const LumpedChain flat = build_level_chain(make_ladder(ising_model(m, 0.0), 0, LadderKind::kTempered), 0);
    const ConductanceReport f = min_threshold_conductance(flat, label_component_family(flat, 0, "sigma_1"));
    EXPECT_GT(f.phi * m, 0.1);
  }

  const int k = 120;
  const PottsModel pm = PottsModel::with_mu(3, k, 2.9);
  const LumpedChain rgb = build_level_chain(make_ladder(pm, 0, LadderKind::kTempered), 0, Restriction::kRgb);
  const ConductanceReport g = min_threshold_conductance(rgb, label_component_family(rgb, 0, "sigma_1"));
  // The valley along the line is about 6e-5 deep per site at this mu, so at
  // tractable n the family minimum is the diffusive cut inside the ordered mode.
  EXPECT_GT(g.threshold, k / 2);
  const int t_min = find_lambda_min(pm).t_min;
  const CutSet valley = CutSet::from_predicate(rgb, [&](std::size_t i) { return rgb.label(i)[0] <= t_min; }, "valley");
  const ConductanceReport v = conductance(rgb, valley);
  EXPECT_GE(v.flow / std::min(v.capacity, 1 - v.capacity), g.phi * (1 - 1e-12));
}

TEST(Conductance, ClassSumMatchesBuiltTemperingChain) {
  for (int n : {6, 12}) {
    const PottsModel m = PottsModel::with_beta(3, n, potts3_critical_beta(n));
    const auto in_a = [n](std::span<const int> c) {
      return std::all_of(c.begin(), c.end(), [n](int x) { return 2 * x <= n; });
    };
    for (LadderKind kind : {LadderKind::kTempered, LadderKind::kDampened}) {
      const Ladder l = make_ladder(m, 4, kind);
      const LumpedChain t = build_tempering_chain(l);
      const CutSet cut = CutSet::from_predicate(t, [&](std::size_t i) {
        const auto& lab = t.label(i);
        return in_a(std::span<const int>(lab.data(), 3));
      }, "A");
      const ConductanceReport want = conductance(t, cut);
      const ConductanceReport got = tempering_sigma_cut_conductance(m, 4, kind, in_a, "A");
      EXPECT_NEAR(got.log_flow, want.log_flow, 1e-10);
      EXPECT_NEAR(got.log_capacity, want.log_capacity, 1e-10);
    }
  }
}

TEST(Conductance, TemperingCutDecaysAtCriticalPoint) {
  double prev = 0.0;
  bool first = true;
  for (int n : {60, 120, 240}) {
    const auto in_a = [n](std::span<const int> c) {
      return std::all_of(c.begin(), c.end(), [n](int x) { return 2 * x <= n; });
    };
    const ConductanceReport r =
        tempering_sigma_cut_conductance(PottsModel::with_beta(3, n, potts3_critical_beta(n)), n, LadderKind::kTempered,
                                        in_a, "A");
    const double lphi = r.log_flow - r.log_capacity;
    if (!first) EXPECT_LT(lphi, prev);
    prev = lphi;
    first = false;
  }
}

TEST(MixingTime, Examples) {
  const Eigen::MatrixXd U = Eigen::MatrixXd::Constant(5, 5, 0.2);
  const MixingTime u = tv_mixing_time(from_matrix(U), 0.1);
  EXPECT_EQ(u.t, 1);
  EXPECT_FALSE(u.lower_bound);
  MixingOptions cap;
  cap.max_steps = 1000;
  const MixingTime id = tv_mixing_time(chain_from_dense(Eigen::MatrixXd::Identity(3, 3), std::vector<double>(3, 1.0 / 3)),
                                       0.125, cap);
  EXPECT_TRUE(id.lower_bound);
}

TEST(MixingTime, MatchesFullSpaceComputation) {
  const int n = 8;
  const LumpedChain c = build_level_chain(make_ladder(ising_model(n, 0.0), 0, LadderKind::kTempered), 0);
  const auto full = oracle::full_metropolis(2, n, 0.0, {});
  const long want = oracle::naive_mixing_time(Eigen::MatrixXd(full.P), full.pi, 0.125, 10000);
  EXPECT_EQ(tv_mixing_time(c, 0.125).t, want);
}

TEST(MixingTime, WithinGapBounds) {
  for (const auto& c : sample_chains()) {
    if (c.size() > 400) continue;
    const auto pi = stationary(c);
    const double pmin = *std::min_element(pi.begin(), pi.end());
    const MixingTime t = tv_mixing_time(c, 0.125);
    const MixingBounds b = gap_mixing_bounds(spectral_gap(c).gap, pmin, 0.125);
    EXPECT_GE(t.t, b.lower);
    EXPECT_LE(t.t, b.upper);
  }
}

TEST(MixingBounds, Examples) {
  const MixingBounds g = gap_mixing_bounds(0.5, 0.25, 0.125);
  EXPECT_NEAR(g.upper, 2.0 * std::log(32.0), 1e-12);
  EXPECT_NEAR(g.lower, std::log(4.0), 1e-12);
  EXPECT_EQ(gap_mixing_bounds(1.0, 0.25, 0.125).lower, 0.0);
  EXPECT_TRUE(gap_mixing_bounds(0.0, 0.25, 0.125).unbounded);

  EXPECT_NEAR(conductance_mixing_bounds(0.25, 0.25, 0.125).lower, std::log(4.0), 1e-12);
  EXPECT_EQ(conductance_mixing_bounds(0.5, 0.25, 0.125).lower, 0.0);
  const MixingBounds c = conductance_mixing_bounds(std::exp(-10.0), std::exp(-20.0), 0.125);
  EXPECT_NEAR(c.upper / (std::exp(20.0) * (std::log(4.0) + 10.0)), 1.0, 1e-8);
}

TEST(Decomposition, SingletonsReduceToProjection) {
  std::mt19937_64 rng(3);
  const auto rc = oracle::random_reversible_chain(6, rng);
  const LumpedChain c = chain_from_dense(rc.P, rc.pi);
  const std::vector<int> part = {0, 1, 2, 3, 4, 5};
  const DecompositionReport r = decomposition_check(c, part);
  EXPECT_EQ(r.min_restriction_gap, 1.0);
  EXPECT_NEAR(r.projection_gap, r.gap, 1e-12);
  EXPECT_TRUE(r.holds);
}

TEST(Decomposition, BottleneckBirthDeath) {
  const int k = 10;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) {
    const double p = i == k / 2 - 1 ? 0.001 : 0.25;
    P(i, i + 1) = P(i + 1, i) = p;
  }
  for (int i = 0; i < k; ++i) P(i, i) = 1.0 - P.row(i).sum();
  const LumpedChain c = chain_from_dense(P, std::vector<double>(k, 1.0 / k));
  std::vector<int> part(k);
  for (int i = 0; i < k; ++i) part[i] = i < k / 2 ? 0 : 1;
  const DecompositionReport r = decomposition_check(c, part);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.gap, r.rhs);
  EXPECT_NEAR(r.projection_gap, 2.0 * 0.001 / (k / 2), 1e-12);
}

TEST(Decomposition, RandomChainsAndIsingTrace) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 4 + static_cast<int>(rng() % 9);
    const auto rc = oracle::random_reversible_chain(k, rng);
    const LumpedChain c = chain_from_dense(rc.P, rc.pi);
    std::vector<int> part(static_cast<std::size_t>(k));
    const int parts = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) part[i] = i < parts ? i : static_cast<int>(rng() % parts);
    EXPECT_TRUE(decomposition_check(c, part).holds);
  }
  const int n = 6;
  const Ladder l = make_ladder(ising_model(n, 4.0 / n), 2, LadderKind::kTempered);
  const LumpedChain s = build_swap_chain(l);
  const TraceSpec t = trace_threshold(l);
  std::vector<int> part(s.size());
  for (std::size_t x = 0; x < s.size(); ++x)
    for (int i = 0; i <= 2; ++i) part[x] |= t.bit(i, s.label(x)[2 * i]) << i;
  EXPECT_TRUE(decomposition_check(s, part).holds);
}

TEST(FitDecay, Examples) {
  std::vector<std::pair<double, double>> e, p;
  for (double x : {4.0, 8.0, 12.0, 16.0}) {
    e.emplace_back(x, std::exp(-0.3 * x));
    p.emplace_back(x, std::pow(x, -2.0));
  }
  const ScalingFit fe = fit_decay(e, FitKind::kExpInN);
  EXPECT_NEAR(fe.slope, -0.3, 1e-12);
  EXPECT_LT(fe.max_residual, 1e-12);
  EXPECT_NEAR(fit_decay(p, FitKind::kPolyInN).slope, -2.0, 1e-12);
  EXPECT_THROW(fit_decay(std::vector<std::pair<double, double>>{{1, 1}, {2, 1}}, FitKind::kExpInN), Error);
  EXPECT_THROW(fit_decay(std::vector<std::pair<double, double>>{{1, 1}, {1, 2}, {1, 3}}, FitKind::kExpInN), Error);
}

TEST(FitDecay, TemperingGapsDecay) {
  std::vector<std::pair<double, double>> pts;
  for (int n : {6, 12, 18, 24}) {
    const Ladder l = make_ladder(PottsModel::with_beta(3, n, potts3_critical_beta(n)), n, LadderKind::kTempered);
    pts.emplace_back(n, spectral_gap(build_tempering_chain(l, Restriction::kRgb)).gap);
  }
  EXPECT_LT(fit_decay(pts, FitKind::kExpInN).slope, 0.0);
}
