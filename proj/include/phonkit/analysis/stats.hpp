/* Copyright 2026 The phonkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/ranks.hpp"

namespace phonkit::analysis {

// Product-moment correlation; nullopt when either side has zero variance.
inline std::optional<double> pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ShapeError("pearson_r: samples differ in length");
  if (xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  double r = sxy / std::sqrt(sxx * syy);
  return std::fmax(-1.0, std::fmin(1.0, r));
}

inline std::optional<double> pearson_r(const std::vector<double>& xs,
                                       const std::vector<double>& ys) {
  return pearson_r(std::span<const double>(xs), std::span<const double>(ys));
}

// Spearman's rho: Pearson correlation of average ranks.
inline std::optional<double> spearman_rho(std::span<const double> xs,
                                          std::span<const double> ys) {
  if (xs.size() != ys.size()) throw ShapeError("spearman_rho: samples differ in length");
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  return pearson_r(rx, ry);
}

inline std::optional<double> spearman_rho(const std::vector<double>& xs,
                                          const std::vector<double>& ys) {
  return spearman_rho(std::span<const double>(xs), std::span<const double>(ys));
}

}  // namespace phonkit::analysis
