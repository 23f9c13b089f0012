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

#include <algorithm>
#include <cmath>
#include <vector>

#include "temperlab/analysis.hpp"
#include "temperlab/error.hpp"

namespace temperlab {

const char* fit_kind_name(FitKind k) { return k == FitKind::kExpInN ? "exp_in_n" : "poly_in_n"; }

ScalingFit fit_decay(std::span<const std::pair<double, double>> points, FitKind kind) {
  require(points.size() >= 3, ErrorCode::kInvalidArgument, "fit_decay needs at least three points");
  ScalingFit fit;
  fit.kind = kind;
  fit.grid.assign(points.begin(), points.end());
  std::vector<double> xs, ys;
  for (const auto& [x, y] : points) {
    require(y > 0.0, ErrorCode::kInvalidArgument, "fit_decay needs positive y values");
    require(kind == FitKind::kExpInN || x > 0.0, ErrorCode::kInvalidArgument, "power-law fit needs positive x");
    xs.push_back(kind == FitKind::kExpInN ? x : std::log(x));
    ys.push_back(std::log(y));
  }
  const double m = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  require(sxx > 1e-300, ErrorCode::kDegenerate, "fit_decay x-grid is degenerate");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.max_residual = std::max(fit.max_residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
  return fit;
}

}  // namespace temperlab
