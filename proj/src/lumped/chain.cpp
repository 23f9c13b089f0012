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

#include "temperlab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "temperlab/error.hpp"
#include "temperlab/log_math.hpp"

namespace temperlab {

const char* state_kind_name(StateKind kind) {
  switch (kind) {
    case StateKind::kClass: return "class";
    case StateKind::kTempering: return "tempering";
    case StateKind::kProduct: return "product";
    case StateKind::kPoint: return "point";
    case StateKind::kPointProduct: return "point_product";
    case StateKind::kTrace: return "trace";
    case StateKind::kGeneric: return "generic";
  }
  return "generic";
}

LumpedChain::LumpedChain(StateKind kind, std::vector<std::vector<int>> labels, std::vector<double> stationary_log,
                         std::vector<std::vector<Transition>> rows, std::string builder, Metadata params)
    : kind_(kind),
      labels_(std::move(labels)),
      stationary_log_(std::move(stationary_log)),
      builder_(std::move(builder)),
      params_(std::move(params)) {
  const std::size_t n = rows.size();
  require(labels_.size() == n && stationary_log_.size() == n, ErrorCode::kInvalidArgument,
          "LumpedChain: labels, stationary weights and rows must have equal length");
  row_ptr_.reserve(n + 1);
  diagonal_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = rows[i];
    std::sort(r.begin(), r.end(), [](const Transition& a, const Transition& b) { return a.to < b.to; });
    double off = 0.0;
    for (std::size_t k = 0; k < r.size();) {
      const std::size_t to = r[k].to;
      require(to < n, ErrorCode::kInvalidArgument, "LumpedChain: transition target out of range");
      double p = 0.0;
      for (; k < r.size() && r[k].to == to; ++k) p += r[k].p;
      if (to == i || p <= 0.0) continue;
      entries_.push_back({to, p});
      off += p;
    }
    row_ptr_.push_back(entries_.size());
    // Rounding can push the off-diagonal mass a hair above one.
    diagonal_[i] = std::max(0.0, 1.0 - off);
  }
}

std::string LumpedChain::describe(std::size_t i) const {
  std::ostringstream os;
  const auto& l = labels_[i];
  os << '(';
  for (std::size_t k = 0; k < l.size(); ++k) os << (k ? " " : "") << l[k];
  os << ')';
  return os.str();
}

double LumpedChain::probability(std::size_t i, std::size_t j) const {
  if (i == j) return diagonal_[i];
  const auto r = row(i);
  auto it = std::lower_bound(r.begin(), r.end(), j, [](const Transition& t, std::size_t v) { return t.to < v; });
  return (it != r.end() && it->to == j) ? it->p : 0.0;
}

std::vector<double> LumpedChain::apply_left(std::span<const double> mu) const {
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (mu[i] == 0.0) continue;
    out[i] += mu[i] * diagonal_[i];
    for (const auto& t : row(i)) out[t.to] += mu[i] * t.p;
  }
  return out;
}

std::vector<double> LumpedChain::apply_right(std::span<const double> f) const {
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    double s = diagonal_[i] * f[i];
    for (const auto& t : row(i)) s += t.p * f[t.to];
    out[i] = s;
  }
  return out;
}

InvariantReport LumpedChain::check_invariants() const {
  InvariantReport rep;
  for (std::size_t i = 0; i < size(); ++i) {
    double sum = diagonal_[i];
    rep.min_entry = std::min(rep.min_entry, diagonal_[i]);
    rep.max_entry = std::max(rep.max_entry, diagonal_[i]);
    for (const auto& t : row(i)) {
      sum += t.p;
      rep.min_entry = std::min(rep.min_entry, t.p);
      rep.max_entry = std::max(rep.max_entry, t.p);
      const double back = probability(t.to, i);
      if (back <= 0.0) {
        rep.max_detailed_balance_error = std::numeric_limits<double>::infinity();
        continue;
      }
      // pi(i) P(i,j) = pi(j) P(j,i), compared in logs.
      const double lhs = stationary_log_[i] + std::log(t.p);
      const double rhs = stationary_log_[t.to] + std::log(back);
      rep.max_detailed_balance_error = std::max(rep.max_detailed_balance_error, std::abs(std::expm1(lhs - rhs)));
    }
    rep.max_row_sum_error = std::max(rep.max_row_sum_error, std::abs(sum - 1.0));
  }
  return rep;
}

void LumpedChain::validate(double row_tol, double balance_tol) const {
  const InvariantReport rep = check_invariants();
  if (!rep.ok(row_tol, balance_tol)) {
    std::ostringstream os;
    os << builder_ << ": invariant violation (row-sum error " << rep.max_row_sum_error << ", detailed-balance error "
       << rep.max_detailed_balance_error << ", entry range [" << rep.min_entry << ", " << rep.max_entry << "])";
    throw Error(ErrorCode::kInconsistentChain, os.str());
  }
}

Eigen::MatrixXd LumpedChain::dense() const {
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    P(ii, ii) = diagonal_[i];
    for (const auto& t : row(i)) P(ii, static_cast<Eigen::Index>(t.to)) = t.p;
  }
  return P;
}

LumpedChain chain_from_dense(const Eigen::MatrixXd& P, std::span<const double> stationary, std::string builder) {
  const auto n = static_cast<std::size_t>(P.rows());
  require(P.cols() == P.rows() && stationary.size() == n, ErrorCode::kInvalidArgument,
          "chain_from_dense: shape mismatch");
  std::vector<std::vector<int>> labels(n);
  std::vector<double> slog(n);
  std::vector<std::vector<Transition>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = {static_cast<int>(i)};
    slog[i] = stationary[i] > 0.0 ? std::log(stationary[i]) : kNegInf;
    for (std::size_t j = 0; j < n; ++j) {
      const double p = P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (i != j && p > 0.0) rows[i].push_back({j, p});
    }
  }
  return LumpedChain(StateKind::kGeneric, std::move(labels), std::move(slog), std::move(rows), std::move(builder));
}

CutSet::CutSet(std::vector<char> members, std::string family)
    : members_(std::move(members)), family_(std::move(family)) {
  count_ = static_cast<std::size_t>(std::count_if(members_.begin(), members_.end(), [](char c) { return c != 0; }));
  require(count_ > 0 && count_ < members_.size(), ErrorCode::kDegenerate,
          "CutSet '" + family_ + "' must be a non-empty proper subset");
}

CutSet CutSet::from_predicate(const LumpedChain& chain, const std::function<bool(std::size_t)>& in_set,
                              std::string family) {
  std::vector<char> m(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) m[i] = in_set(i) ? 1 : 0;
  return CutSet(std::move(m), std::move(family));
}

CutSet CutSet::complement() const {
  std::vector<char> m(members_.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = members_[i] ? 0 : 1;
  return CutSet(std::move(m), family_ + " (complement)");
}

}  // namespace temperlab
