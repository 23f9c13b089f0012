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

#include "temperlab/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "temperlab/error.hpp"
#include "temperlab/log_math.hpp"
#include "temperlab/lumped.hpp"
#include "temperlab/model.hpp"
#include "temperlab/sigma.hpp"

namespace temperlab::cli {

namespace {

// Values closer than this count as tied, so a reported unique maximum is real.
constexpr double kTieTol = 1e-9;

void require_twelve(int n) {
  require(n > 0 && n % 12 == 0, ErrorCode::kDivisibility, "n = " + std::to_string(n) + " is not a multiple of 12");
}

double w(const Ladder& l, int level, int a, int b, int c) {
  const int s[3] = {a, b, c};
  return l.log_class_weight(level, std::span<const int>(s, 3));
}

// Runs body; library errors become a failed item carrying the error code.
template <class F>
VerifyItem guarded(std::string id, std::string name, int n, F&& body) {
  VerifyItem item{std::move(id), std::move(name), n, false, {}, {}};
  try {
    body(item);
  } catch (const Error& e) {
    item.pass = false;
    item.error = std::string(error_code_name(e.code())) + ": " + e.what();
  }
  return item;
}

int resolve_m(int M, int n) { return M < 0 ? n : M; }

}  // namespace

double critical_ratio_rate() { return (19.0 * std::numbers::ln2 - 12.0 * std::log(3.0)) / 12.0; }

double log_critical_ratio(int n) {
  require_twelve(n);
  const int half[3] = {n / 2, n / 4, n / 4};
  const int third[3] = {n / 3, n / 3, n / 3};
  const double bar_beta = potts3_critical_beta(n) / 2.0;
  return log_multinomial(half) - log_multinomial(third) +
         bar_beta * (bar_hamiltonian(half) - bar_hamiltonian(third));
}

VerifyItem verify_half_line(int n, int M) {
  return guarded("a", "argmax on sigma_1 = n/2 at sigma_2 = sigma_3 = n/4", n, [&](VerifyItem& it) {
    require_twelve(n);
    M = resolve_m(M, n);
    const Ladder l = make_ladder(PottsModel::with_beta(3, n, potts3_critical_beta(n)), M, LadderKind::kTempered);
    bool argmax_ok = true;
    bool monotone = true;
    double margin = std::numeric_limits<double>::infinity();
    double prev_ratio = kNegInf;
    for (int i = 0; i <= M; ++i) {
      const double best = w(l, i, n / 2, n / 4, n / 4);
      for (int s = 0; s <= n / 2; ++s) {
        if (s == n / 4) continue;
        const double gap = best - w(l, i, n / 2, s, n / 2 - s);
        margin = std::min(margin, gap);
        if (gap <= kTieTol) argmax_ok = false;
      }
      const double ratio = best - w(l, i, n / 3, n / 3, n / 3);
      if (ratio < prev_ratio - kTieTol) monotone = false;
      prev_ratio = ratio;
    }
    it.pass = argmax_ok && monotone;
    it.values = {{"levels", M + 1.0},
                 {"min_log_margin", margin},
                 {"ratio_monotone", monotone ? 1.0 : 0.0},
                 {"log_ratio_top_level", prev_ratio}};
  });
}

VerifyItem verify_valley_line(int n, double mu, int M) {
  return guarded("b", "argmax on sigma_1 = t_min at the midpoint split", n, [&](VerifyItem& it) {
    require_twelve(n);
    M = resolve_m(M, n);
    const PottsModel model = PottsModel::with_mu(3, n, mu);
    const LambdaPoints lp = lambda_points(model);
    const Ladder l = make_ladder(model, M, LadderKind::kTempered);
    const int t = lp.t_min;
    const int m = n - t;
    bool ok = true;
    double margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= M; ++i) {
      const double best = w(l, i, t, m / 2, m - m / 2);
      for (int s = 0; s <= m; ++s) {
        if (s == m / 2 || s == m - m / 2) continue;
        const double gap = best - w(l, i, t, s, m - s);
        margin = std::min(margin, gap);
        if (gap <= kTieTol) ok = false;
      }
    }
    it.pass = ok;
    it.values = {{"mu", mu},
                 {"t_min", static_cast<double>(t)},
                 {"lambda_min", lp.lambda_min()},
                 {"asymptotic", lp.asymptotic ? 1.0 : 0.0},
                 {"levels", M + 1.0},
                 {"min_log_margin", margin}};
  });
}

VerifyItem verify_mass_balance(int n) {
  return guarded("c", "mass balance of Omega_{n/3} and Omega_{2n/3} at beta_c", n, [&](VerifyItem& it) {
    require_twelve(n);
    const PottsModel model = PottsModel::with_beta(3, n, potts3_critical_beta(n));
    const int third[3] = {n / 3, n / 3, n / 3};
    const int two_thirds[3] = {2 * n / 3, n / 6, n / 6};
    const double log_ratio = log_gibbs_class_weight(model, third) - log_gibbs_class_weight(model, two_thirds);
    // Both class weights are linear in bar-beta, so the crossing is explicit.
    const double crossing = (log_multinomial(two_thirds) - log_multinomial(third)) /
                            (bar_hamiltonian(third) - bar_hamiltonian(two_thirds));
    const double target = 2.0 * std::numbers::ln2 / n;
    const double log_z = make_ladder(model, 0, LadderKind::kTempered).log_partition(0);
    const double log_mass = log_gibbs_class_weight(model, third) - log_z;
    const bool crossing_ok = std::abs(crossing - target) <= 10.0 / (static_cast<double>(n) * n);
    const bool mass_ok = log_mass >= -2.0 * std::log(static_cast<double>(n));
    it.pass = crossing_ok && mass_ok;
    it.values = {{"ratio", std::exp(log_ratio)},
                 {"bar_beta_crossing", crossing},
                 {"bar_beta_c", target},
                 {"crossing_offset_n2", (crossing - target) * n * n},
                 {"mass_n3", std::exp(log_mass)},
                 {"mass_floor", 1.0 / (static_cast<double>(n) * n)}};
  });
}

VerifyItem verify_critical_ratio(int n, int n_lo, int n_hi) {
  return guarded("d", "exact n/2 : n/3 ratio at beta_c and its per-n log slope", n, [&](VerifyItem& it) {
    require(n_hi > n_lo, ErrorCode::kInvalidArgument, "slope grid needs n_hi > n_lo");
    const double r = log_critical_ratio(n);
    const double slope = (log_critical_ratio(n_hi) - log_critical_ratio(n_lo)) / (n_hi - n_lo);
    const double rate = critical_ratio_rate();
    it.pass = slope < 0.0 && std::abs(slope / rate - 1.0) <= 0.05;
    it.values = {{"ratio", std::exp(r)},
                 {"n_lo", static_cast<double>(n_lo)},
                 {"n_hi", static_cast<double>(n_hi)},
                 {"slope", slope},
                 {"rate", rate}};
  });
}

VerifyItem verify_disordered_mass(int n, double mu, int M) {
  return guarded("e", "disordered mass decreases with the level, faster than the valley", n, [&](VerifyItem& it) {
    require_twelve(n);
    M = resolve_m(M, n);
    const PottsModel model = PottsModel::with_mu(3, n, mu);
    const LambdaPoints lp = lambda_points(model);
    const Ladder l = make_ladder(model, M, LadderKind::kTempered);
    const auto sigmas = enumerate_sigma(n, 3);
    const int t = lp.t_min;
    const int vb = (n - t + 1) / 2;
    std::vector<double> disordered, valley;
    for (int i = 0; i <= M; ++i) {
      std::vector<double> terms;
      for (const Sigma& s : sigmas)
        if (s.is_rgb_ordered()) terms.push_back(l.log_class_weight(i, s));
      const double log_z = log_sum_exp(terms);
      disordered.push_back(w(l, i, n / 3, n / 3, n / 3) - log_z);
      valley.push_back(w(l, i, t, vb, n - t - vb) - log_z);
    }
    double min_inc = std::numeric_limits<double>::infinity();
    double min_geo = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= M; ++i) {
      const double inc = disordered[i - 1] - disordered[i];
      min_inc = std::min(min_inc, inc);
      min_geo = std::min(min_geo, inc - (valley[i - 1] - valley[i]));
    }
    it.pass = M == 0 || (min_inc > 0.0 && min_geo > 0.0);
    it.values = {{"mu", mu}, {"t_min", static_cast<double>(t)}, {"min_log_step", min_inc}, {"min_log_geo", min_geo}};
  });
}

VerifyItem verify_gb_unimodal(int n, double mu, int M) {
  return guarded("f", "fall-rise-fall profile along the balanced-minority line", n, [&](VerifyItem& it) {
    require_twelve(n);
    M = resolve_m(M, n);
    const Ladder l = make_ladder(PottsModel::with_mu(3, n, mu), M, LadderKind::kTempered);
    bool ok = true;
    int valleys = 0;
    for (int i = 0; i <= M; ++i) {
      int phase = 0;  // 0 falling, 1 rising, 2 falling again
      double prev = w(l, i, n / 3, n / 3, n / 3);
      for (int t = n / 3 + 2; t <= n; t += 2) {
        const double cur = w(l, i, t, (n - t + 1) / 2, (n - t) / 2);
        const double d = cur - prev;
        if (std::abs(d) <= kTieTol) ok = false;
        if (d > 0.0 && phase != 1) {
          if (phase == 2) ok = false;
          phase = 1;
        } else if (d < 0.0 && phase == 1) {
          phase = 2;
        }
        prev = cur;
      }
      if (phase == 2) ++valleys;
    }
    it.pass = ok;
    it.values = {{"mu", mu}, {"levels", M + 1.0}, {"levels_with_ordered_mode", static_cast<double>(valleys)}};
  });
}

std::vector<VerifyItem> run_lemma_suite(const SuiteOptions& o) {
  std::vector<VerifyItem> out;
  const auto wants = [&](const char* id) { return std::find(o.items.begin(), o.items.end(), id) != o.items.end(); };
  for (int n : o.n_grid) {
    if (wants("a")) out.push_back(verify_half_line(n, o.M));
    if (wants("b")) out.push_back(verify_valley_line(n, o.mu, o.M));
    if (wants("c")) out.push_back(verify_mass_balance(n));
    if (wants("d")) out.push_back(verify_critical_ratio(n, o.slope_n_lo, o.slope_n_hi));
    if (wants("e")) out.push_back(verify_disordered_mass(n, o.mu, o.M));
    if (wants("f")) out.push_back(verify_gb_unimodal(n, o.mu, o.M));
  }
  return out;
}

}  // namespace temperlab::cli
