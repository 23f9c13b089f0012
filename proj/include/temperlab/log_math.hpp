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

#ifndef TEMPERLAB_LOG_MATH_HPP
#define TEMPERLAB_LOG_MATH_HPP

#include <cmath>
#include <limits>
#include <span>

namespace temperlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// ln(k!) for integer k >= 0. Values up to kLogFactorialTableSize come from a
/// table built once with lgamma; larger arguments call lgamma directly.
double log_factorial(long long k);

inline constexpr long long kLogFactorialTableSize = 1 << 18;

/// Numerically stable ln(sum(exp(values))). Empty input gives -inf.
double log_sum_exp(std::span<const double> values);

/// ln(exp(a) + exp(b)).
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

// Streaming log-sum-exp. Rescales lazily so one pass suffices.
class LogSumAccumulator {
 public:
  void add(double log_value) {
    if (log_value == kNegInf) return;
    if (log_value <= max_) {
      sum_ += std::exp(log_value - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - log_value) + 1.0;
      max_ = log_value;
    }
  }

  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace temperlab

#endif  // TEMPERLAB_LOG_MATH_HPP
