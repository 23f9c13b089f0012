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

#ifndef TEMPERLAB_CLI_VERIFY_HPP
#define TEMPERLAB_CLI_VERIFY_HPP

#include <string>
#include <utility>
#include <vector>

namespace temperlab::cli {

/// One checked statement of the 3-state lemma suite. Window and divisibility
/// failures land in `error` and make the item fail; they never abort the suite.
struct VerifyItem {
  std::string id;
  std::string name;
  int n = 0;
  bool pass = false;
  std::string error;
  std::vector<std::pair<std::string, double>> values;
};

/// Per-n log slope of the exact critical ratio pi(Omega_{n/2}) / pi(Omega_{n/3}),
/// (1/12) ln(2^19 / 3^12).
double critical_ratio_rate();

/// ln pi_{beta_c}(n/2, n/4, n/4) - ln pi_{beta_c}(n/3, n/3, n/3).
double log_critical_ratio(int n);

// (a) Along sigma_1 = n/2 the argmax is sigma_2 = sigma_3 = n/4 at every level
// of the TEMPERED ladder ending at beta_c, and the n/2 : n/3 ratio is
// non-decreasing in the level.
VerifyItem verify_half_line(int n, int M);
// (b) Along sigma_1 = t_min the argmax is the midpoint split at every level.
VerifyItem verify_valley_line(int n, double mu, int M);
// (c) Mass balance of Omega_{n/3} and Omega_{2n/3} at beta_c, the bar-beta
// where they are equal, and pi(Omega_{n/3}) >= pi(Omega) / n^2.
VerifyItem verify_mass_balance(int n);
// (d) Exact n/2 : n/3 ratio at n and its per-n log slope between n_lo and n_hi.
VerifyItem verify_critical_ratio(int n, int n_lo, int n_hi);
// (e) The disordered class mass on Omega_RGB strictly decreases with the
// level, and faster than the valley class mass.
VerifyItem verify_disordered_mass(int n, double mu, int M);
// (f) Along the line (t, ceil((n-t)/2), floor((n-t)/2)) over t = n/3, n/3 + 2, ..
// every level profile falls, rises, then falls (each part possibly empty).
VerifyItem verify_gb_unimodal(int n, double mu, int M);

struct SuiteOptions {
  std::vector<int> n_grid{12};
  double mu = 2.9;
  int M = -1;  // -1 means M = n
  int slope_n_lo = 6000;
  int slope_n_hi = 12000;
  std::vector<std::string> items{"a", "b", "c", "d", "e", "f"};
};

std::vector<VerifyItem> run_lemma_suite(const SuiteOptions& options);

}  // namespace temperlab::cli

#endif  // TEMPERLAB_CLI_VERIFY_HPP
