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
#include <numeric>
#include <vector>

#include "phonkit/metrics/align.hpp"

namespace phonkit::metrics {

// Exact non-negative ratio kept in lowest terms; 0/0 is stored as 0/1.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Fraction of(std::uint64_t n, std::uint64_t d) {
    if (d == 0 || n == 0) return {0, 1};
    std::uint64_t g = std::gcd(n, d);
    return {n / g, d / g};
  }

  double value() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Per-phoneme alignment counters. A substitution r->h charges s_ref to r and
// s_hyp to h, so n+s_ref+d is the reference support and n+s_hyp+i the
// hypothesis support.
struct PhonemeCounts {
  std::uint64_t n = 0;
  std::uint64_t s_ref = 0;
  std::uint64_t s_hyp = 0;
  std::uint64_t i = 0;
  std::uint64_t d = 0;

  std::uint64_t ref_support() const { return n + s_ref + d; }
  std::uint64_t hyp_support() const { return n + s_hyp + i; }

  PhonemeCounts& operator+=(const PhonemeCounts& o) {
    n += o.n;
    s_ref += o.s_ref;
    s_hyp += o.s_hyp;
    i += o.i;
    d += o.d;
    return *this;
  }

  friend bool operator==(const PhonemeCounts&, const PhonemeCounts&) = default;
};

struct PhonemeScore {
  Fraction precision;
  Fraction recall;
  Fraction f1;
};

// pr = N/(N+S+I) with S on the hypothesis side, re = N/(N+S+D) with S on the
// reference side, F1 = 2 pr re / (pr + re) = 2N / (2N + S_hyp + I + S_ref + D).
// Zero denominators give zero scores.
inline PhonemeScore phoneme_score(const PhonemeCounts& c) {
  PhonemeScore s;
  s.precision = Fraction::of(c.n, c.hyp_support());
  s.recall = Fraction::of(c.n, c.ref_support());
  s.f1 = Fraction::of(2 * c.n, c.hyp_support() + c.ref_support());
  return s;
}

// Counters indexed by vocabulary index. Merging is associative and
// commutative, so per-utterance tallies can be built in parallel.
class PhonemeTally {
 public:
  explicit PhonemeTally(std::size_t vocab_size = 0) : counts_(vocab_size) {}

  void add(const EditScript<std::size_t>& script) {
    for (const auto& op : script.ops) {
      switch (op.kind) {
        case EditKind::match:
          at(*op.ref).n += 1;
          break;
        case EditKind::substitute:
          at(*op.ref).s_ref += 1;
          at(*op.hyp).s_hyp += 1;
          break;
        case EditKind::insert:
          at(*op.hyp).i += 1;
          break;
        case EditKind::remove:
          at(*op.ref).d += 1;
          break;
      }
    }
  }

  PhonemeTally& merge(const PhonemeTally& other) {
    if (other.counts_.size() > counts_.size()) counts_.resize(other.counts_.size());
    for (std::size_t k = 0; k < other.counts_.size(); ++k) counts_[k] += other.counts_[k];
    return *this;
  }

  std::size_t size() const { return counts_.size(); }
  const PhonemeCounts& operator[](std::size_t k) const { return counts_.at(k); }
  const std::vector<PhonemeCounts>& counts() const { return counts_; }

  // Sum of s_ref + d + i over all phonemes; equals the total edit distance.
  std::uint64_t total_edits() const {
    std::uint64_t e = 0;
    for (const auto& c : counts_) e += c.s_ref + c.d + c.i;
    return e;
  }

  std::vector<PhonemeScore> scores() const {
    std::vector<PhonemeScore> out;
    out.reserve(counts_.size());
    for (const auto& c : counts_) out.push_back(phoneme_score(c));
    return out;
  }

  friend bool operator==(const PhonemeTally&, const PhonemeTally&) = default;

 private:
  PhonemeCounts& at(std::size_t k) {
    if (k >= counts_.size()) counts_.resize(k + 1);
    return counts_[k];
  }

  std::vector<PhonemeCounts> counts_;
};

}  // namespace phonkit::metrics
