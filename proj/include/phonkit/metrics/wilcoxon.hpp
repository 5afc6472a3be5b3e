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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/ranks.hpp"

namespace phonkit::metrics {

enum class WilcoxonMethod { automatic, exact, normal };

struct WilcoxonResult {
  double p_value = 1.0;
  double w_plus = 0.0;         // sum of ranks of positive differences
  std::size_t n_nonzero = 0;   // pairs left after dropping zero differences
  bool exact = false;
};

// Largest number of non-zero differences handled by the exact distribution
// under WilcoxonMethod::automatic.
inline constexpr std::size_t kWilcoxonExactMax = 25;

// Two-sided paired signed-rank test on a - b. Zero differences are dropped
// and tied |differences| share average ranks. The exact null distribution
// counts all 2^n sign assignments of the (possibly tied) ranks; the normal
// approximation uses the tie-corrected variance and a 0.5 continuity
// correction.
inline WilcoxonResult wilcoxon_signed_rank(
    std::span<const double> a, std::span<const double> b,
    WilcoxonMethod method = WilcoxonMethod::automatic) {
  if (a.size() != b.size() || a.empty()) {
    throw Error("wilcoxon_signed_rank needs two non-empty samples of equal size");
  }
  std::vector<double> diffs, magnitudes;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double d = a[k] - b[k];
    if (d != 0.0) {
      diffs.push_back(d);
      magnitudes.push_back(std::fabs(d));
    }
  }
  WilcoxonResult result;
  result.n_nonzero = diffs.size();
  if (diffs.empty()) return result;

  std::vector<double> ranks = average_ranks(magnitudes);
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (diffs[k] > 0) result.w_plus += ranks[k];
  }
  const std::size_t n = diffs.size();
  const bool exact = method == WilcoxonMethod::exact ||
                     (method == WilcoxonMethod::automatic && n <= kWilcoxonExactMax);
  result.exact = exact;

  if (exact) {
    // Average ranks are multiples of 1/2, so doubled ranks are integers.
    std::vector<std::size_t> doubled(n);
    std::size_t total = 0;
    for (std::size_t k = 0; k < n; ++k) {
      doubled[k] = static_cast<std::size_t>(std::lround(2.0 * ranks[k]));
      total += doubled[k];
    }
    std::vector<double> ways(total + 1, 0.0);
    ways[0] = 1.0;
    for (std::size_t r : doubled) {
      for (std::size_t s = total; s >= r; --s) {
        ways[s] += ways[s - r];
        if (s == r) break;
      }
    }
    const auto observed = static_cast<std::size_t>(std::lround(2.0 * result.w_plus));
    double below = 0.0, above = 0.0, all = 0.0;
    for (std::size_t s = 0; s <= total; ++s) {
      all += ways[s];
      if (s <= observed) below += ways[s];
      if (s >= observed) above += ways[s];
    }
    result.p_value = std::min(1.0, 2.0 * std::min(below, above) / all);
    return result;
  }

  const double nn = static_cast<double>(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
  for (std::size_t t : tie_groups(magnitudes)) {
    const double tt = static_cast<double>(t);
    var -= (tt * tt * tt - tt) / 48.0;
  }
  if (var <= 0.0) return result;
  const double z = std::max(0.0, std::fabs(result.w_plus - mean) - 0.5) / std::sqrt(var);
  result.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return result;
}

inline WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                           const std::vector<double>& b,
                                           WilcoxonMethod method = WilcoxonMethod::automatic) {
  return wilcoxon_signed_rank(std::span<const double>(a), std::span<const double>(b), method);
}

// "<1e-3" below 0.001, otherwise three decimals.
inline std::string format_p_value(double p) {
  if (p < 1e-3) return "<1e-3";
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.3f", p);
  return buf;
}

}  // namespace phonkit::metrics
