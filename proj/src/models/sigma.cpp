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

#include "temperlab/sigma.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "temperlab/error.hpp"
#include "temperlab/log_math.hpp"

namespace temperlab {

Sigma::Sigma(std::vector<int> counts) : counts_(std::move(counts)) {
  require(counts_.size() >= 2, ErrorCode::kInvalidArgument, "Sigma: need q >= 2 colors");
  for (int c : counts_) require(c >= 0, ErrorCode::kInvalidArgument, "Sigma: negative count");
  n_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

Sigma Sigma::recolored(int from, int to) const {
  require(counts_[static_cast<std::size_t>(from)] > 0, ErrorCode::kInvalidArgument,
          "Sigma::recolored: source color is empty");
  Sigma out = *this;
  --out.counts_[static_cast<std::size_t>(from)];
  ++out.counts_[static_cast<std::size_t>(to)];
  return out;
}

bool Sigma::is_rgb_ordered() const {
  return std::is_sorted(counts_.begin(), counts_.end(), std::greater<>());
}

std::string Sigma::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < counts_.size(); ++i) os << (i ? "," : "") << counts_[i];
  os << ')';
  return os.str();
}

namespace {

// binomial(a, b) with saturation; fine for the ranks used here.
std::uint64_t binomial(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    r = r * (a - b + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

void enumerate_rec(std::vector<int>& prefix, int pos, int remaining,
                   const std::function<void(std::span<const int>)>& visit) {
  const int q = static_cast<int>(prefix.size());
  if (pos == q - 1) {
    prefix[static_cast<std::size_t>(pos)] = remaining;
    visit(prefix);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    prefix[static_cast<std::size_t>(pos)] = v;
    enumerate_rec(prefix, pos + 1, remaining - v, visit);
  }
}

}  // namespace

std::uint64_t composition_count(int n, int q) {
  return binomial(static_cast<std::uint64_t>(n + q - 1), static_cast<std::uint64_t>(q - 1));
}

void for_each_sigma(int n, int q, const std::function<void(std::span<const int>)>& visit) {
  require(n >= 1, ErrorCode::kInvalidArgument, "enumerate_sigma: need n >= 1");
  require(q >= 2, ErrorCode::kInvalidArgument, "enumerate_sigma: need q >= 2");
  std::vector<int> prefix(static_cast<std::size_t>(q), 0);
  enumerate_rec(prefix, 0, n, visit);
}

std::vector<Sigma> enumerate_sigma(int n, int q, std::uint64_t cap) {
  require(n >= 1, ErrorCode::kInvalidArgument, "enumerate_sigma: need n >= 1");
  require(q >= 2, ErrorCode::kInvalidArgument, "enumerate_sigma: need q >= 2");
  const std::uint64_t count = composition_count(n, q);
  require(count <= cap, ErrorCode::kStateSpaceTooLarge,
          "enumerate_sigma: " + std::to_string(count) + " classes exceed cap " + std::to_string(cap));
  std::vector<Sigma> out;
  out.reserve(count);
  for_each_sigma(n, q, [&](std::span<const int> c) { out.emplace_back(std::vector<int>(c.begin(), c.end())); });
  return out;
}

std::uint64_t sigma_rank(std::span<const int> counts) {
  // Compositions preceding `counts` at position j are those with a larger value
  // there; summing over those values telescopes to one binomial per position.
  const int q = static_cast<int>(counts.size());
  int remaining = std::accumulate(counts.begin(), counts.end(), 0);
  std::uint64_t rank = 0;
  for (int j = 0; j + 1 < q; ++j) {
    const int v = counts[static_cast<std::size_t>(j)];
    const int k = q - j - 1;
    if (remaining > v) {
      rank += binomial(static_cast<std::uint64_t>(remaining - v - 1 + k), static_cast<std::uint64_t>(k));
    }
    remaining -= v;
  }
  return rank;
}

double log_multinomial(std::span<const int> counts) {
  long long n = 0;
  double denom = 0.0;
  for (int c : counts) {
    n += c;
    denom += log_factorial(c);
  }
  return log_factorial(n) - denom;
}

double pair_hamiltonian(std::span<const int> counts, std::span<const double> fields) {
  require(fields.empty() || fields.size() == counts.size(), ErrorCode::kInvalidArgument,
          "pair_hamiltonian: fields length must equal q");
  double pairs = 0.0;
  for (int c : counts) pairs += 0.5 * static_cast<double>(c) * static_cast<double>(c - 1);
  return pairs + field_term(counts, fields);
}

double bar_hamiltonian(std::span<const int> counts) {
  double s = 0.0;
  for (int c : counts) s += static_cast<double>(c) * static_cast<double>(c);
  return s;
}

double field_term(std::span<const int> counts, std::span<const double> fields) {
  double s = 0.0;
  for (std::size_t m = 0; m < fields.size() && m < counts.size(); ++m) s += fields[m] * counts[m];
  return s;
}

}  // namespace temperlab
