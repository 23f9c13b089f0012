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

#include "level_space.hpp"

#include <cmath>

#include "temperlab/error.hpp"
#include "temperlab/log_math.hpp"
#include "temperlab/sigma.hpp"

namespace temperlab::detail {

ClassSpace ClassSpace::potts(int n, int q, Restriction restriction, std::uint64_t cap) {
  require(restriction == Restriction::kNone || q == 3, ErrorCode::kUnsupportedKind,
          "RGB restriction requires q = 3");
  const std::uint64_t total = composition_count(n, q);
  require(total <= cap, ErrorCode::kStateSpaceTooLarge,
          "class space has " + std::to_string(total) + " states, above the cap " + std::to_string(cap));
  ClassSpace s;
  s.n_ = n;
  s.q_ = q;
  s.by_rank_.assign(total, -1);
  for_each_sigma(n, q, [&](std::span<const int> c) {
    if (restriction == Restriction::kRgb && !(c[0] >= c[1] && c[1] >= c[2])) return;
    s.by_rank_[sigma_rank(c)] = static_cast<long>(s.labels_.size());
    s.labels_.emplace_back(c.begin(), c.end());
  });
  return s;
}

ClassSpace ClassSpace::points(const ExpModel& model) {
  ClassSpace s;
  s.points_ = true;
  s.n_ = model.N;
  for (int x = -model.N; x <= model.N_prime; ++x) s.labels_.push_back({x});
  return s;
}

long ClassSpace::index_of(std::span<const int> counts) const {
  if (points_) {
    const long i = static_cast<long>(counts[0]) + n_;
    return (i >= 0 && i < static_cast<long>(size())) ? i : -1;
  }
  return by_rank_[sigma_rank(counts)];
}

std::vector<std::vector<Transition>> metropolis_rows(const ClassSpace& space, std::span<const double> config_log) {
  std::vector<std::vector<Transition>> rows(space.size());
  if (space.is_points()) {
    const long last = static_cast<long>(space.size()) - 1;
    for (long i = 0; i <= last; ++i) {
      for (long j : {i - 1, i + 1}) {
        if (j < 0 || j > last) continue;
        rows[i].push_back({static_cast<std::size_t>(j), 0.5 * metropolis_accept(config_log[j] - config_log[i])});
      }
    }
    return rows;
  }
  const int q = space.q();
  const double n = space.n();
  std::vector<int> c2;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& c = space.label(i);
    for (int a = 0; a < q; ++a) {
      if (c[a] == 0) continue;
      for (int b = 0; b < q; ++b) {
        if (b == a) continue;
        c2 = c;
        --c2[a];
        ++c2[b];
        const long j = space.index_of(c2);
        if (j < 0) continue;
        const double p = (c[a] / n) / q * metropolis_accept(config_log[j] - config_log[i]);
        rows[i].push_back({static_cast<std::size_t>(j), p});
      }
    }
  }
  return rows;
}

ClassSpace ladder_space(const Ladder& ladder, Restriction restriction, std::uint64_t cap) {
  if (ladder.is_potts()) {
    const auto& m = ladder.potts();
    return ClassSpace::potts(m.n, m.q, restriction, cap);
  }
  require(restriction == Restriction::kNone, ErrorCode::kUnsupportedKind,
          "restrictions apply only to Potts ladders");
  const ClassSpace s = ClassSpace::points(ladder.exp_model());
  require(s.size() <= cap, ErrorCode::kStateSpaceTooLarge, "point space above the cap");
  return s;
}

LevelData level_data(const Ladder& ladder, int level, const ClassSpace& space, Restriction restriction) {
  LevelData d;
  d.config_log.resize(space.size());
  d.class_log.resize(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.is_points()) {
      d.config_log[i] = d.class_log[i] = ladder.log_point_weight(level, space.label(i)[0]);
    } else {
      d.config_log[i] = ladder.log_config_weight(level, space.label(i));
      d.class_log[i] = ladder.log_class_weight(level, space.label(i));
    }
  }
  d.log_z = restriction == Restriction::kNone ? ladder.log_partition(level) : log_sum_exp(d.class_log);
  d.rows = metropolis_rows(space, d.config_log);
  return d;
}

}  // namespace temperlab::detail
