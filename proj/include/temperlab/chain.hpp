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

#ifndef TEMPERLAB_CHAIN_HPP
#define TEMPERLAB_CHAIN_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace temperlab {

/// How the integer label of each state is laid out.
///   kClass:        sigma counts (q ints)
///   kTempering:    sigma counts followed by the level
///   kProduct:      sigma_0 .. sigma_M concatenated ((M+1) q ints)
///   kPoint:        {x}
///   kPointProduct: {x_0, .., x_M}
///   kTrace:        trace bits t_0 .. t_M
///   kGeneric:      {index}
enum class StateKind { kClass, kTempering, kProduct, kPoint, kPointProduct, kTrace, kGeneric };

const char* state_kind_name(StateKind kind);

struct Transition {
  std::size_t to;
  double p;
};

struct InvariantReport {
  double max_row_sum_error = 0.0;
  double max_detailed_balance_error = 0.0;  // relative
  double min_entry = 1.0;
  double max_entry = 0.0;
  bool ok(double row_tol = 1e-12, double balance_tol = 1e-10) const {
    return max_row_sum_error <= row_tol && max_detailed_balance_error <= balance_tol && min_entry >= 0.0 &&
           max_entry <= 1.0;
  }
};

/// Finite reversible Markov chain in sparse form: off-diagonal entries are
/// stored per row (sorted by column) and the holding probability is derived
/// as one minus the off-diagonal row sum. Stationary weights are kept as
/// unnormalized logs because class masses span hundreds of decades.
class LumpedChain {
 public:
  using Metadata = std::vector<std::pair<std::string, std::string>>;

  LumpedChain() = default;
  /// Rows may list a target more than once (entries are merged) and may
  /// contain self-loops (dropped; the diagonal is implied).
  LumpedChain(StateKind kind, std::vector<std::vector<int>> labels, std::vector<double> stationary_log,
              std::vector<std::vector<Transition>> rows, std::string builder, Metadata params = {});

  std::size_t size() const { return diagonal_.size(); }
  StateKind kind() const { return kind_; }
  const std::vector<int>& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::vector<int>>& labels() const { return labels_; }
  std::string describe(std::size_t i) const;

  std::span<const Transition> row(std::size_t i) const {
    return {entries_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
  }
  double diagonal(std::size_t i) const { return diagonal_[i]; }
  /// P(i, j), including the diagonal.
  double probability(std::size_t i, std::size_t j) const;
  std::size_t nonzeros() const { return entries_.size() + size(); }

  std::span<const double> stationary_log() const { return stationary_log_; }

  const std::string& builder() const { return builder_; }
  const Metadata& params() const { return params_; }

  /// Returns mu P for a row vector mu.
  std::vector<double> apply_left(std::span<const double> mu) const;
  /// Returns P f for a column vector f.
  std::vector<double> apply_right(std::span<const double> f) const;

  InvariantReport check_invariants() const;
  /// Throws kInconsistentChain unless row sums, entry ranges and detailed
  /// balance hold at the given tolerances.
  void validate(double row_tol = 1e-12, double balance_tol = 1e-10) const;

  Eigen::MatrixXd dense() const;

 private:
  StateKind kind_ = StateKind::kGeneric;
  std::vector<std::vector<int>> labels_;
  std::vector<double> stationary_log_;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Transition> entries_;
  std::vector<double> diagonal_;
  std::string builder_;
  Metadata params_;
};

/// Builds a chain from a dense row-stochastic matrix and stationary vector.
LumpedChain chain_from_dense(const Eigen::MatrixXd& P, std::span<const double> stationary,
                             std::string builder = "dense");

/// A non-empty proper subset of a chain's states.
class CutSet {
 public:
  CutSet(std::vector<char> members, std::string family);
  static CutSet from_predicate(const LumpedChain& chain, const std::function<bool(std::size_t)>& in_set,
                               std::string family);

  bool contains(std::size_t i) const { return members_[i] != 0; }
  std::size_t size() const { return members_.size(); }
  std::size_t count() const { return count_; }
  const std::string& family() const { return family_; }
  CutSet complement() const;

 private:
  std::vector<char> members_;
  std::size_t count_ = 0;
  std::string family_;
};

/// Per-level trace thresholds: the trace bit at level i is 0 for values below
/// thresholds[i] and 1 at or above it.
struct TraceSpec {
  std::vector<int> thresholds;
  int range_min = 0;  // smallest value the traced coordinate can take
  int range_max = 0;

  int bit(int level, int value) const { return value >= thresholds[static_cast<std::size_t>(level)] ? 1 : 0; }
};

}  // namespace temperlab

#endif  // TEMPERLAB_CHAIN_HPP
