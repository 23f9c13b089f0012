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

#ifndef TEMPERLAB_SIGMA_HPP
#define TEMPERLAB_SIGMA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace temperlab {

inline constexpr std::uint64_t kDefaultStateCap = 10'000'000;

/// Color-count vector (sigma_1, ..., sigma_q) of a spin configuration on the
/// complete graph. Every configuration with these counts has the same weight
/// under all model families here, so this is the lumped state.
class Sigma {
 public:
  Sigma() = default;
  /// Throws kInvalidArgument when q < 2 or a count is negative.
  explicit Sigma(std::vector<int> counts);

  int q() const { return static_cast<int>(counts_.size()); }
  int n() const { return n_; }
  int operator[](int color) const { return counts_[static_cast<std::size_t>(color)]; }
  std::span<const int> counts() const { return counts_; }

  /// Counts after recoloring one vertex from color `from` to color `to`.
  /// Requires (*this)[from] > 0.
  Sigma recolored(int from, int to) const;

  bool is_rgb_ordered() const;  // sigma_1 >= sigma_2 >= ... >= sigma_q
  std::string to_string() const;

  friend bool operator==(const Sigma&, const Sigma&) = default;
  friend auto operator<=>(const Sigma& a, const Sigma& b) { return a.counts_ <=> b.counts_; }

 private:
  std::vector<int> counts_;
  int n_ = 0;
};

/// Number of compositions of n into q ordered non-negative parts,
/// binomial(n+q-1, q-1), saturating at UINT64_MAX.
std::uint64_t composition_count(int n, int q);

/// All compositions of n into q parts in descending lexicographic order,
/// e.g. (2,0,0),(1,1,0),(1,0,1),(0,2,0),(0,1,1),(0,0,2).
/// Throws kStateSpaceTooLarge when the count exceeds `cap`.
std::vector<Sigma> enumerate_sigma(int n, int q, std::uint64_t cap = kDefaultStateCap);

/// Visits the same sequence as enumerate_sigma without materializing it.
void for_each_sigma(int n, int q, const std::function<void(std::span<const int>)>& visit);

/// Position of `counts` in the enumerate_sigma order.
std::uint64_t sigma_rank(std::span<const int> counts);

/// ln(n! / prod sigma_m!), the log of the number of configurations in the class.
double log_multinomial(std::span<const int> counts);
inline double log_multinomial(const Sigma& s) { return log_multinomial(s.counts()); }

/// sum_m sigma_m(sigma_m - 1)/2 + sum_m h_m sigma_m: the Potts Hamiltonian on the
/// complete graph (monochromatic pairs plus field term).
double pair_hamiltonian(std::span<const int> counts, std::span<const double> fields);
inline double pair_hamiltonian(const Sigma& s, std::span<const double> fields) {
  return pair_hamiltonian(s.counts(), fields);
}

/// sum_m sigma_m^2.
double bar_hamiltonian(std::span<const int> counts);
inline double bar_hamiltonian(const Sigma& s) { return bar_hamiltonian(s.counts()); }

/// sum_m h_m sigma_m.
double field_term(std::span<const int> counts, std::span<const double> fields);

}  // namespace temperlab

#endif  // TEMPERLAB_SIGMA_HPP
