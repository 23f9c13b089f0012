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

#ifndef TEMPERLAB_TESTS_ORACLES_HPP
#define TEMPERLAB_TESTS_ORACLES_HPP

// Test-side reference implementations. Nothing here calls into the lumped
// builders or the analysis eigensolvers.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace oracle {

/// Metropolis chain on all q^n configurations of the complete graph with
/// H(x) = sum_{i<j} [x_i == x_j] + sum_v h[x_v]; configuration index is the
/// base-q number x_0 + q x_1 + ...
struct FullChain {
  int q = 0;
  int n = 0;
  Eigen::SparseMatrix<double, Eigen::RowMajor> P;
  std::vector<double> pi;
  std::vector<std::vector<int>> configs;
};

FullChain full_metropolis(int q, int n, double beta, const std::vector<double>& fields);

/// Class masses keyed by color counts.
std::map<std::vector<int>, double> class_masses(const FullChain& chain);

/// Gap 1 - |lambda_1| of a reversible chain: dense D^{1/2} P D^{-1/2}
/// eigendecomposition up to 2500 states, subspace iteration above.
double reversible_gap(const Eigen::SparseMatrix<double, Eigen::RowMajor>& P, const std::vector<double>& pi);
double dense_reversible_gap(const Eigen::MatrixXd& P, const std::vector<double>& pi);

/// n! / prod sigma_m! in exact 64-bit arithmetic (n <= 20).
std::uint64_t exact_multinomial(const std::vector<int>& counts);

/// Compositions of n into q parts by nested counting (no ordering claims).
std::uint64_t brute_composition_count(int n, int q);

/// Step-by-step worst-start TV mixing time.
long naive_mixing_time(const Eigen::MatrixXd& P, const std::vector<double>& pi, double eps, long cap);

/// Lazy random reversible chain on k states: random graph, Metropolis
/// weights toward a random pi, holding probability at least 1/2.
struct RandomChain {
  Eigen::MatrixXd P;
  std::vector<double> pi;
};
RandomChain random_reversible_chain(int k, std::mt19937_64& rng);

/// Lumps P by a labeling: Pbar(a, b) = sum_{x in a, y in b} pi(x) P(x, y) / pi(a).
Eigen::MatrixXd lump(const Eigen::MatrixXd& P, const std::vector<double>& pi, const std::vector<int>& part, int parts);

}  // namespace oracle

#endif  // TEMPERLAB_TESTS_ORACLES_HPP
