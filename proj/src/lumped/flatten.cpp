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
#include <numbers>

#include "level_space.hpp"
#include "temperlab/error.hpp"
#include "temperlab/lumped.hpp"

namespace temperlab {

namespace {

double line_log_weight(const PottsModel& m, int t) {
  const int rest = m.n - t;
  const std::array<int, 3> c{t, rest - rest / 2, rest / 2};
  return log_gibbs_class_weight(m, c);
}

double lambda_derivative(double mu, double lambda) {
  return 0.5 * mu * (3.0 * lambda - 1.0) - std::log(lambda) + std::log((1.0 - lambda) / 2.0);
}

double bisect(double mu, double lo, double hi) {
  const double f_lo = lambda_derivative(mu, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((lambda_derivative(mu, mid) < 0.0) == (f_lo < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void require_window(double mu) {
  const double lo = 4.0 * std::numbers::ln2;
  if (!(mu > lo && mu < 3.0))
    throw Error(ErrorCode::kWindow, "mu = " + std::to_string(mu) +
                                        " is outside the coexistence window (4 ln 2, 3) = (2.7726, 3)");
}

}  // namespace

LambdaPoints find_lambda_min(const PottsModel& model) {
  require(model.q == 3, ErrorCode::kUnsupportedKind, "find_lambda_min needs q = 3");
  require(model.n % 12 == 0, ErrorCode::kDivisibility, "find_lambda_min needs n divisible by 12");
  const int n = model.n;
  std::vector<int> ts;
  std::vector<double> f;
  for (int t = n / 3; t <= n; t += 2) {
    ts.push_back(t);
    f.push_back(line_log_weight(model, t));
  }
  const std::size_t K = f.size();
  for (std::size_t k = 1; k + 1 < K; ++k) {
    if (!(f[k] < f[k - 1] && f[k] <= f[k + 1])) continue;
    std::size_t best = k + 1;
    for (std::size_t j = k + 1; j < K; ++j)
      if (f[j] > f[best]) best = j;
    if (f[best] <= f[k]) break;
    return {n, ts[k], ts[best], false};
  }
  const double mu = model.beta * n;
  throw Error(ErrorCode::kWindow,
              "no interior minimum along sigma = (t, (n-t)/2, (n-t)/2) at n = " + std::to_string(n) +
                  ", mu = " + std::to_string(mu) + "; a valley needs mu in (4 ln 2, 3) and large enough n");
}

std::pair<double, double> asymptotic_lambda_min(double mu) {
  require_window(mu);
  constexpr int kGrid = 20000;
  const double lo = 1.0 / 3.0;
  const double hi = 1.0 - 1e-12;
  double lambda_min = -1.0;
  double prev_x = lo + 1e-9;
  double prev = lambda_derivative(mu, prev_x);
  for (int k = 1; k <= kGrid; ++k) {
    const double x = lo + (hi - lo) * k / kGrid;
    const double v = lambda_derivative(mu, x);
    if (lambda_min < 0.0 && prev < 0.0 && v >= 0.0) {
      lambda_min = bisect(mu, prev_x, x);
    } else if (lambda_min >= 0.0 && prev > 0.0 && v <= 0.0) {
      return {lambda_min, bisect(mu, prev_x, x)};
    }
    prev = v;
    prev_x = x;
  }
  throw Error(ErrorCode::kWindow, "continuum profile has no valley at mu = " + std::to_string(mu));
}

LambdaPoints lambda_points(const PottsModel& model) {
  try {
    return find_lambda_min(model);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kWindow) throw;
    const auto [lmin, lmax] = asymptotic_lambda_min(model.beta * model.n);
    // Nearest integer, kept strictly above the disordered point n/3.
    const int t_min = std::max(static_cast<int>(std::lround(lmin * model.n)), model.n / 3 + 1);
    return {model.n, t_min, static_cast<int>(std::lround(lmax * model.n)), true};
  }
}

FlattenedWeights flattened_weights(const PottsModel& model, bool allow_asymptotic) {
  validate(model);
  FlattenedWeights out;
  out.valley = allow_asymptotic ? lambda_points(model) : find_lambda_min(model);
  const auto space = detail::ClassSpace::potts(model.n, 3, Restriction::kRgb, kDefaultStateCap);
  const double valley = line_log_weight(model, out.valley.t_min);
  out.classes = space.labels();
  for (const auto& c : out.classes) {
    const double w = log_gibbs_class_weight(model, c);
    const bool in_k = c[0] < out.valley.t_min && w >= valley;
    out.original_log.push_back(w);
    out.flattened_log.push_back(in_k ? valley : w);
    out.in_k.push_back(in_k ? 1 : 0);
  }
  return out;
}

LumpedChain build_flattened_level_chain(const PottsModel& model, bool allow_asymptotic,
                                        const BuildOptions& options) {
  const auto space = detail::ClassSpace::potts(model.n, 3, Restriction::kRgb, options.state_cap);
  FlattenedWeights fw = flattened_weights(model, allow_asymptotic);
  std::vector<double> config_log(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) config_log[i] = fw.flattened_log[i] - log_multinomial(space.label(i));
  auto rows = detail::metropolis_rows(space, config_log);
  LumpedChain::Metadata params = {{"family", "potts"},
                                  {"n", std::to_string(model.n)},
                                  {"t_min", std::to_string(fw.valley.t_min)},
                                  {"asymptotic_valley", fw.valley.asymptotic ? "true" : "false"}};
  return LumpedChain(StateKind::kClass, space.labels(), std::move(fw.flattened_log), std::move(rows), "flattened",
                     std::move(params));
}

}  // namespace temperlab
