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

#include "temperlab/log_math.hpp"

#include <algorithm>
#include <vector>

#include "temperlab/error.hpp"

namespace temperlab {

namespace {

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(static_cast<std::size_t>(kLogFactorialTableSize) + 1);
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = std::lgamma(static_cast<double>(k) + 1.0);
    return t;
  }();
  return table;
}

}  // namespace

double log_factorial(long long k) {
  require(k >= 0, ErrorCode::kInvalidArgument, "log_factorial: negative argument");
  if (k <= kLogFactorialTableSize) return log_factorial_table()[static_cast<std::size_t>(k)];
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return kNegInf;
  const double m = *std::max_element(values.begin(), values.end());
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s);
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kStateSpaceTooLarge: return "state_space_too_large";
    case ErrorCode::kUnsupportedKind: return "unsupported_kind";
    case ErrorCode::kDivisibility: return "divisibility";
    case ErrorCode::kNoTrace: return "no_trace";
    case ErrorCode::kWindow: return "window";
    case ErrorCode::kInconsistentChain: return "inconsistent_chain";
    case ErrorCode::kNotConverged: return "not_converged";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace temperlab
