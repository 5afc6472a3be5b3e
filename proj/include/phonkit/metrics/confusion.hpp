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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "phonkit/core/csv.hpp"
#include "phonkit/metrics/align.hpp"

namespace phonkit::metrics {

// Square count matrix over vocabulary indices: cell (r, h) counts reference
// r aligned to hypothesis h. Insertions and deletions are kept in marginal
// vectors rather than matrix cells.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t size = 0)
      : size_(size), cells_(size * size), insertions_(size), deletions_(size) {}

  void add(const EditScript<std::size_t>& script) {
    for (const auto& op : script.ops) {
      switch (op.kind) {
        case EditKind::match:
        case EditKind::substitute:
          check(*op.ref);
          check(*op.hyp);
          cells_[*op.ref * size_ + *op.hyp] += 1;
          break;
        case EditKind::insert:
          check(*op.hyp);
          insertions_[*op.hyp] += 1;
          break;
        case EditKind::remove:
          check(*op.ref);
          deletions_[*op.ref] += 1;
          break;
      }
    }
  }

  std::size_t size() const { return size_; }
  std::uint64_t at(std::size_t ref, std::size_t hyp) const {
    return cells_.at(ref * size_ + hyp);
  }
  std::uint64_t insertions(std::size_t hyp) const { return insertions_.at(hyp); }
  std::uint64_t deletions(std::size_t ref) const { return deletions_.at(ref); }

  std::uint64_t trace() const {
    std::uint64_t t = 0;
    for (std::size_t k = 0; k < size_; ++k) t += at(k, k);
    return t;
  }

  // Row-normalized view; rows without counts are all zero.
  std::vector<std::vector<double>> row_normalized() const {
    std::vector<std::vector<double>> out(size_, std::vector<double>(size_, 0.0));
    for (std::size_t r = 0; r < size_; ++r) {
      std::uint64_t total = 0;
      for (std::size_t h = 0; h < size_; ++h) total += at(r, h);
      if (total == 0) continue;
      for (std::size_t h = 0; h < size_; ++h) {
        out[r][h] = static_cast<double>(at(r, h)) / static_cast<double>(total);
      }
    }
    return out;
  }

  // CSV with a header row and header column of surfaces; `rows` selects and
  // orders the vocabulary indices shown.
  std::string to_csv(const std::vector<std::string>& surfaces,
                     const std::vector<std::size_t>& rows) const {
    std::vector<csv::Row> table;
    csv::Row header{"ref\\hyp"};
    for (std::size_t h : rows) header.push_back(surfaces.at(h));
    table.push_back(header);
    for (std::size_t r : rows) {
      csv::Row row{surfaces.at(r)};
      for (std::size_t h : rows) row.push_back(std::to_string(at(r, h)));
      table.push_back(std::move(row));
    }
    return csv::format(table);
  }

 private:
  void check(std::size_t k) {
    if (k >= size_) throw std::out_of_range("confusion index out of range");
  }

  std::size_t size_;
  std::vector<std::uint64_t> cells_;
  std::vector<std::uint64_t> insertions_;
  std::vector<std::uint64_t> deletions_;
};

inline ConfusionMatrix confusion(const std::vector<EditScript<std::size_t>>& scripts,
                                 std::size_t vocab_size) {
  ConfusionMatrix m(vocab_size);
  for (const auto& s : scripts) m.add(s);
  return m;
}

}  // namespace phonkit::metrics
