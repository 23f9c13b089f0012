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

#ifndef TEMPERLAB_SRC_LUMPED_LEVEL_SPACE_HPP
#define TEMPERLAB_SRC_LUMPED_LEVEL_SPACE_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "temperlab/chain.hpp"
#include "temperlab/lumped.hpp"
#include "temperlab/model.hpp"

namespace temperlab::detail {

/// The per-level state space shared by every level of a ladder: Potts
/// classes (optionally RGB-filtered) or exponential points.
class ClassSpace {
 public:
  static ClassSpace potts(int n, int q, Restriction restriction, std::uint64_t cap);
  static ClassSpace points(const ExpModel& model);

  std::size_t size() const { return labels_.size(); }
  const std::vector<int>& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::vector<int>>& labels() const { return labels_; }
  bool is_points() const { return points_; }
  /// Index of a count vector, or -1 when it is outside the space.
  long index_of(std::span<const int> counts) const;
  /// Traced coordinate: sigma_1 for classes, x for points.
  int traced_value(std::size_t i) const { return labels_[i][0]; }
  int n() const { return n_; }
  int q() const { return q_; }

 private:
  bool points_ = false;
  int n_ = 0;
  int q_ = 0;
  std::vector<std::vector<int>> labels_;
  std::vector<long> by_rank_;  // composition rank -> index or -1
};

/// Weights and the Metropolis kernel of one level on a ClassSpace.
struct LevelData {
  std::vector<double> config_log;  // per-configuration (per-point) log weight
  std::vector<double> class_log;   // whole-class log weight
  double log_z = 0.0;              // log-partition over the space
  std::vector<std::vector<Transition>> rows;
};

/// Metropolis rows for arbitrary per-configuration log weights.
std::vector<std::vector<Transition>> metropolis_rows(const ClassSpace& space, std::span<const double> config_log);

LevelData level_data(const Ladder& ladder, int level, const ClassSpace& space, Restriction restriction);

ClassSpace ladder_space(const Ladder& ladder, Restriction restriction, std::uint64_t cap);

inline double metropolis_accept(double delta_log) { return delta_log >= 0.0 ? 1.0 : std::exp(delta_log); }

}  // namespace temperlab::detail

#endif  // TEMPERLAB_SRC_LUMPED_LEVEL_SPACE_HPP
