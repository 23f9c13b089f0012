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

#ifndef TEMPERLAB_LUMPED_HPP
#define TEMPERLAB_LUMPED_HPP

#include <cstdint>
#include <optional>

#include "temperlab/chain.hpp"
#include "temperlab/model.hpp"

namespace temperlab {

/// kRgb keeps only sigma_1 >= sigma_2 >= sigma_3 (q = 3); moves leaving the
/// set are rejected into the diagonal.
enum class Restriction { kNone, kRgb };

const char* restriction_name(Restriction r);
Restriction parse_restriction(const std::string& name);

struct BuildOptions {
  std::uint64_t state_cap = kDefaultStateCap;
  /// Swap chains only. When false the chain picks a level uniformly and
  /// applies its level move, with no swap moves.
  bool swap_moves = true;
};

/// Metropolis chain at one ladder level. A step picks a vertex (color a with
/// probability sigma_a / n) and a color b uniformly from q, and accepts with
/// the per-configuration weight ratio. Exponential ladders give the walk on
/// [-N, N'] instead.
LumpedChain build_level_chain(const Ladder& ladder, int level, Restriction restriction = Restriction::kNone,
                              const BuildOptions& options = {});

/// Simulated tempering on (sigma, level). Half the time a level move, half
/// the time a proposal to level i +/- 1 (1/2 each, holding when out of range)
/// accepted with the ratio of normalized weights. Log-partitions are exact;
/// under kRgb they are re-summed over the restricted classes so the level
/// marginal stays uniform.
LumpedChain build_tempering_chain(const Ladder& ladder, Restriction restriction = Restriction::kNone,
                                  const BuildOptions& options = {});

/// Swapping chain on (sigma_0, .., sigma_M): a level move at a uniform level
/// with probability 1/2, otherwise a transposition of a uniform adjacent pair.
/// Works for exponential ladders as well (points instead of classes).
LumpedChain build_swap_chain(const Ladder& ladder, Restriction restriction = Restriction::kNone,
                             const BuildOptions& options = {});

/// Metropolis walk for C^{e |x|} on [-N, N'] with proposal +/-1 (1/2 each);
/// proposals leaving the interval hold.
LumpedChain build_exp_level_chain(const ExpModel& model, double e);

/// Swap chain for an exponential ladder.
LumpedChain build_exp_swap_chain(const Ladder& ladder, const BuildOptions& options = {});

/// Trace thresholds for an Ising or exponential ladder. Ising: the argmin of
/// the level-M class distribution (over sigma_1) strictly between its two
/// largest local maxima, ties to the larger sigma_1. Every other level with
/// an interior minimum uses its own argmin; levels without one inherit the
/// level-M value. Exponential: 0 at every level.
TraceSpec trace_threshold(const Ladder& ladder);

/// Exact projection of the swap chain onto trace bit-vectors {0,1}^{M+1}.
/// State t is labeled by its bits; bit i is stored in position i.
LumpedChain build_trace_projection(const Ladder& ladder, const TraceSpec& trace);

/// Valley along the line sigma = (t, (n-t)/2, (n-t)/2) of the 3-state model:
/// t_min is the interior minimum between the disordered and ordered modes and
/// t_max the ordered-mode maximum beyond it.
struct LambdaPoints {
  int n = 0;
  int t_min = 0;
  int t_max = 0;
  bool asymptotic = false;  // t_min taken from the continuum profile

  double lambda_min() const { return static_cast<double>(t_min) / n; }
  double lambda_max() const { return static_cast<double>(t_max) / n; }
};

/// Scans t = n/3, n/3 + 2, .., n. Throws kWindow when the profile has no
/// interior minimum and kDivisibility unless n is a multiple of 12.
LambdaPoints find_lambda_min(const PottsModel& model);

/// Roots of (mu/2)(3 lambda - 1) - ln lambda + ln((1 - lambda)/2) in
/// (1/3, 1): returns {lambda_min, lambda_max}. Requires mu in (4 ln 2, 3).
std::pair<double, double> asymptotic_lambda_min(double mu);

/// find_lambda_min when the discrete valley exists, else t_min = round(lambda_min n)
/// (at least n/3 + 1) and t_max = round(lambda_max n) from the continuum profile.
LambdaPoints lambda_points(const PottsModel& model);

/// Metropolis chain on Omega_RGB for the flattened measure: classes with
/// sigma_1 < t_min whose mass is at least that of the valley class get the
/// valley class's mass. With allow_asymptotic the valley comes from
/// lambda_points instead of find_lambda_min.
LumpedChain build_flattened_level_chain(const PottsModel& model, bool allow_asymptotic = false,
                                        const BuildOptions& options = {});

/// Log class weights of the flattened measure in build_flattened_level_chain
/// state order, plus the valley used.
struct FlattenedWeights {
  std::vector<std::vector<int>> classes;
  std::vector<double> original_log;
  std::vector<double> flattened_log;
  std::vector<char> in_k;
  LambdaPoints valley;
};
FlattenedWeights flattened_weights(const PottsModel& model, bool allow_asymptotic = false);

/// Writes "from_label<TAB>to_label<TAB>probability" lines, diagonal included.
void write_sparse_triplets(const LumpedChain& chain, std::ostream& out);

}  // namespace temperlab

#endif  // TEMPERLAB_LUMPED_HPP
