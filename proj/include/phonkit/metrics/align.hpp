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
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace phonkit::metrics {

enum class EditKind { match, substitute, insert, remove };

template <typename T>
struct EditOp {
  EditKind kind;
  std::optional<T> ref;
  std::optional<T> hyp;

  friend bool operator==(const EditOp&, const EditOp&) = default;
};

template <typename T>
struct EditScript {
  std::vector<EditOp<T>> ops;

  std::size_t distance() const {
    return static_cast<std::size_t>(
        std::count_if(ops.begin(), ops.end(),
                      [](const EditOp<T>& op) { return op.kind != EditKind::match; }));
  }

  std::size_t count(EditKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        ops.begin(), ops.end(), [kind](const EditOp<T>& op) { return op.kind == kind; }));
  }

  std::vector<T> reference() const {
    std::vector<T> out;
    for (const auto& op : ops) {
      if (op.ref) out.push_back(*op.ref);
    }
    return out;
  }

  std::vector<T> hypothesis() const {
    std::vector<T> out;
    for (const auto& op : ops) {
      if (op.hyp) out.push_back(*op.hyp);
    }
    return out;
  }
};

template <typename T>
std::size_t edit_distance(std::span<const T> ref, std::span<const T> hyp) {
  const std::size_t m = hyp.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t diag = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

// Unit-cost Levenshtein alignment. The backtrace walks from the end and at
// each cell prefers match, then substitution, then deletion, then insertion
// among the moves consistent with the optimal cost.
template <typename T>
EditScript<T> align(std::span<const T> ref, std::span<const T> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  std::vector<std::size_t> cost((n + 1) * (m + 1));
  auto at = [m, &cost](std::size_t i, std::size_t j) -> std::size_t& {
    return cost[i * (m + 1) + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  EditScript<T> script;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::size_t c = at(i, j);
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (same && at(i - 1, j - 1) == c) {
        script.ops.push_back({EditKind::match, ref[i - 1], hyp[j - 1]});
        --i, --j;
        continue;
      }
      if (!same && at(i - 1, j - 1) + 1 == c) {
        script.ops.push_back({EditKind::substitute, ref[i - 1], hyp[j - 1]});
        --i, --j;
        continue;
      }
    }
    if (i > 0 && at(i - 1, j) + 1 == c) {
      script.ops.push_back({EditKind::remove, ref[i - 1], std::nullopt});
      --i;
      continue;
    }
    script.ops.push_back({EditKind::insert, std::nullopt, hyp[j - 1]});
    --j;
  }
  std::reverse(script.ops.begin(), script.ops.end());
  return script;
}

template <typename T>
EditScript<T> align(const std::vector<T>& ref, const std::vector<T>& hyp) {
  return align<T>(std::span<const T>(ref), std::span<const T>(hyp));
}

template <typename T>
std::size_t edit_distance(const std::vector<T>& ref, const std::vector<T>& hyp) {
  return edit_distance<T>(std::span<const T>(ref), std::span<const T>(hyp));
}

}  // namespace phonkit::metrics
