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

#include <Eigen/Dense>

#include "temperlab/analysis.hpp"
#include "temperlab/error.hpp"

namespace temperlab {

namespace {

double worst_tv(const Eigen::MatrixXd& A, const Eigen::RowVectorXd& pi) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) worst = std::max(worst, 0.5 * (A.row(i) - pi).cwiseAbs().sum());
  return worst;
}

MixingTime exact_mixing_time(const LumpedChain& chain, const std::vector<double>& pi_vec, double epsilon,
                             long max_steps) {
  const Eigen::MatrixXd P = chain.dense();
  const Eigen::RowVectorXd pi = Eigen::Map<const Eigen::RowVectorXd>(pi_vec.data(), static_cast<Eigen::Index>(pi_vec.size()));
  // d(t) is non-increasing, so double until below epsilon and then binary
  // search with the stored powers P^{2^k}.
  std::vector<Eigen::MatrixXd> powers{P};
  long t = 1;
  while (worst_tv(powers.back(), pi) > epsilon) {
    if (2 * t > max_steps) return {t, true, false};
    powers.push_back(powers.back() * powers.back());
    t *= 2;
  }
  if (powers.size() == 1) return {1, false, false};
  Eigen::MatrixXd cur = powers[powers.size() - 2];
  long at = t / 2;  // d(at) > epsilon
  for (int k = static_cast<int>(powers.size()) - 3; k >= 0; --k) {
    Eigen::MatrixXd cand = cur * powers[static_cast<std::size_t>(k)];
    if (worst_tv(cand, pi) > epsilon) {
      cur = std::move(cand);
      at += 1L << k;
    }
  }
  return {at + 1, false, false};
}

MixingTime mode_start_mixing_time(const LumpedChain& chain, const std::vector<double>& pi, double epsilon,
                                  const MixingOptions& options) {
  std::vector<std::size_t> modes;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    bool is_max = true;
    for (const auto& t : chain.row(i))
      if (pi[t.to] > pi[i]) {
        is_max = false;
        break;
      }
    if (is_max) modes.push_back(i);
  }
  std::sort(modes.begin(), modes.end(), [&](std::size_t a, std::size_t b) { return pi[a] > pi[b]; });
  if (modes.size() > options.max_mode_starts) modes.resize(options.max_mode_starts);
  std::vector<std::vector<double>> mu(modes.size(), std::vector<double>(chain.size(), 0.0));
  for (std::size_t k = 0; k < modes.size(); ++k) mu[k][modes[k]] = 1.0;
  for (long t = 1; t <= options.max_steps; ++t) {
    double worst = 0.0;
    for (auto& m : mu) {
      m = chain.apply_left(m);
      double tv = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i) tv += std::abs(m[i] - pi[i]);
      worst = std::max(worst, 0.5 * tv);
    }
    if (worst <= epsilon) return {t, false, true};
  }
  return {options.max_steps, true, true};
}

}  // namespace

MixingTime tv_mixing_time(const LumpedChain& chain, double epsilon, const MixingOptions& options) {
  require(epsilon > 0.0 && epsilon < 1.0, ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1)");
  const std::vector<double> pi = stationary(chain);
  if (chain.size() <= options.exact_threshold) return exact_mixing_time(chain, pi, epsilon, options.max_steps);
  return mode_start_mixing_time(chain, pi, epsilon, options);
}

MixingBounds gap_mixing_bounds(double gap, double pi_min, double epsilon) {
  require(pi_min > 0.0 && pi_min < 1.0, ErrorCode::kInvalidArgument, "pi_min must lie in (0, 1)");
  require(epsilon > 0.0 && epsilon < 0.5, ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1/2)");
  require(gap >= 0.0 && gap <= 1.0, ErrorCode::kInvalidArgument, "gap must lie in [0, 1]");
  MixingBounds b;
  b.formula = "(1/gap - 1) ln(1/(2 eps)) <= tau(eps) <= (1/gap) ln(1/(pi_min eps))";
  if (gap == 0.0) {
    b.unbounded = true;
    b.lower = b.upper = std::numeric_limits<double>::infinity();
    return b;
  }
  b.lower = (1.0 / gap - 1.0) * std::log(1.0 / (2.0 * epsilon));
  b.upper = (1.0 / gap) * std::log(1.0 / (pi_min * epsilon));
  return b;
}

MixingBounds conductance_mixing_bounds(double phi, double pi_min, double epsilon) {
  require(pi_min > 0.0 && pi_min < 1.0, ErrorCode::kInvalidArgument, "pi_min must lie in (0, 1)");
  require(epsilon > 0.0 && epsilon < 0.5, ErrorCode::kInvalidArgument, "epsilon must lie in (0, 1/2)");
  require(phi >= 0.0 && phi <= 1.0, ErrorCode::kInvalidArgument, "phi must lie in [0, 1]");
  MixingBounds b;
  b.formula = "(1 - 2 phi)/(2 phi) ln(1/(2 eps)) <= tau(eps) <= (1/phi^2)(ln(1/(2 eps)) + ln((1 - pi_min)/pi_min)/2)";
  if (phi == 0.0) {
    b.unbounded = true;
    b.lower = b.upper = std::numeric_limits<double>::infinity();
    return b;
  }
  const double l = std::log(1.0 / (2.0 * epsilon));
  b.lower = std::max(0.0, (1.0 - 2.0 * phi) / (2.0 * phi) * l);
  b.upper = (l + 0.5 * std::log((1.0 - pi_min) / pi_min)) / (phi * phi);
  return b;
}

}  // namespace temperlab
