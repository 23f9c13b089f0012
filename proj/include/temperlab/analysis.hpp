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

#ifndef TEMPERLAB_ANALYSIS_HPP
#define TEMPERLAB_ANALYSIS_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "temperlab/chain.hpp"
#include "temperlab/model.hpp"

namespace temperlab {

/// Normalized stationary distribution. Throws kInconsistentChain unless
/// max |pi P - pi| <= tol.
std::vector<double> stationary(const LumpedChain& chain, double tol = 1e-10);

enum class EigenMethod { kAuto, kDense, kIterative };

const char* eigen_method_name(EigenMethod m);

struct SpectralOptions {
  double tol = 1e-10;  // Ritz residual tolerance (iterative)
  EigenMethod method = EigenMethod::kAuto;
  std::size_t dense_threshold = 4000;
  int krylov_dim = 80;
  int max_restarts = 4000;
};

struct SpectralReport {
  double gap = 0.0;          // 1 - |lambda_1|
  double lambda1_abs = 1.0;  // largest non-unit eigenvalue modulus
  double lambda_second = 1.0;
  double lambda_min = -1.0;
  EigenMethod method = EigenMethod::kDense;
  double residual = 0.0;
  bool converged = true;
};

/// Gap of a reversible chain via the symmetrization
/// S(x, y) = sqrt(P(x, y) P(y, x)), which shares P's spectrum. A one-state
/// chain has gap 1 by convention.
SpectralReport spectral_gap(const LumpedChain& chain, const SpectralOptions& options = {});

struct ConductanceReport {
  double phi = 0.0;  // flow / capacity
  double flow = 0.0;
  double capacity = 0.0;
  double log_flow = 0.0;
  double log_capacity = 0.0;
  std::optional<CutSet> cut;
  std::string family;
  double threshold = 0.0;  // for threshold families
};

/// flow = sum_{x in S, y not in S} pi(x) P(x, y), capacity = pi(S). Both are
/// accumulated in logs.
ConductanceReport conductance(const LumpedChain& chain, const CutSet& cut);

/// Nested cuts S_t = {score < t} over the distinct score values.
struct ThresholdFamily {
  std::string name;
  std::vector<double> score;
};

ThresholdFamily label_component_family(const LumpedChain& chain, std::size_t component, std::string name);
/// Number of one bits of a trace state (sum of labels).
ThresholdFamily trace_weight_family(const LumpedChain& chain);

/// Minimizes flow / min(pi(S), pi(S^c)) over the family; ties go to the
/// smallest threshold. The returned report describes the lighter side, so
/// phi = flow / capacity still holds. Not a minimum over all subsets.
ConductanceReport min_threshold_conductance(const LumpedChain& chain, const ThresholdFamily& family);

/// Global conductance min_{pi(S) <= 1/2} flow / pi(S) by enumerating all
/// subsets; chains with at most 18 states.
ConductanceReport exhaustive_conductance(const LumpedChain& chain);

/// Conductance of a sigma-defined cut of the tempering chain at any n,
/// summed class by class with no chain in memory. Uses the tempering kernel
/// of build_tempering_chain with default exponents i / M.
ConductanceReport tempering_sigma_cut_conductance(const PottsModel& model, int M, LadderKind kind,
                                                  const std::function<bool(std::span<const int>)>& in_cut,
                                                  std::string family);

struct MixingTime {
  long t = 0;
  bool lower_bound = false;  // iteration cap reached; t is a lower bound
  bool heuristic = false;    // only mode starts were examined
};

struct MixingOptions {
  long max_steps = 1L << 24;
  std::size_t exact_threshold = 1500;  // all starts, dense powers
  std::size_t max_mode_starts = 8;
};

/// min t with max_x || P^t(x, .) - pi ||_TV <= epsilon. Above the exact
/// threshold only the local maxima of pi (the modes) are used as starts.
MixingTime tv_mixing_time(const LumpedChain& chain, double epsilon, const MixingOptions& options = {});

struct MixingBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool unbounded = false;
  std::string formula;
};

/// (1/gap - 1) ln(1/(2 eps)) <= tau(eps) <= (1/gap) ln(1/(pi_min eps)).
MixingBounds gap_mixing_bounds(double gap, double pi_min, double epsilon);

/// (1 - 2 phi)/(2 phi) ln(1/(2 eps)) <= tau(eps)
///   <= (1/phi^2)(ln(1/(2 eps)) + 1/2 ln((1 - pi_min)/pi_min)).
/// The lower bound is the slow-mixing instrument.
MixingBounds conductance_mixing_bounds(double phi, double pi_min, double epsilon);

struct DecompositionReport {
  double gap = 0.0;
  double projection_gap = 0.0;
  double min_restriction_gap = 0.0;
  double rhs = 0.0;  // gap_projection * min_restriction / 2
  bool holds = false;
};

/// Restrictions keep in-part moves and fold the rest into the diagonal; the
/// projection is P_bar(a, b) = sum_{x in a, y in b} pi(x) P(x, y) / pi(a).
/// Singleton parts have restriction gap 1.
DecompositionReport decomposition_check(const LumpedChain& chain, std::span<const int> part);

/// Restriction and projection chains used by decomposition_check.
LumpedChain restriction_chain(const LumpedChain& chain, std::span<const int> part, int which);
LumpedChain projection_chain(const LumpedChain& chain, std::span<const int> part);

enum class FitKind { kExpInN, kPolyInN };

const char* fit_kind_name(FitKind k);

struct ScalingFit {
  FitKind kind = FitKind::kExpInN;
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  std::vector<std::pair<double, double>> grid;
};

/// Least squares of ln y on x (kExpInN) or on ln x (kPolyInN).
ScalingFit fit_decay(std::span<const std::pair<double, double>> points, FitKind kind);

}  // namespace temperlab

#endif  // TEMPERLAB_ANALYSIS_HPP
