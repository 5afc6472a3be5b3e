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
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonkit/analysis/sigmoid.hpp"
#include "phonkit/analysis/stats.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/ipa/phoneme.hpp"

namespace phonkit::analysis {

struct FreqF1Point {
  std::string surface;
  std::string base;
  std::size_t train_freq = 0;
  std::size_t test_freq = 0;
  double f1 = 0.0;

  std::optional<double> x() const {
    if (train_freq == 0) return std::nullopt;
    return std::log10(static_cast<double>(train_freq));
  }
};

struct FitInput {
  std::vector<double> xs, ys, weights;
  std::vector<const FreqF1Point*> used;
  std::vector<const FreqF1Point*> zero_train;
};

// Points with train_freq >= 1 and test_freq >= 1 enter the fit; unseen
// training phonemes are set aside.
inline FitInput fit_input(const std::vector<FreqF1Point>& points, bool weight_by_test_freq) {
  FitInput in;
  for (const auto& p : points) {
    if (p.test_freq == 0) continue;
    if (p.train_freq == 0) {
      in.zero_train.push_back(&p);
      continue;
    }
    in.xs.push_back(*p.x());
    in.ys.push_back(p.f1);
    if (weight_by_test_freq) in.weights.push_back(static_cast<double>(p.test_freq));
    in.used.push_back(&p);
  }
  return in;
}

inline SigmoidFit fit_sigmoid(const std::vector<FreqF1Point>& points,
                              bool weight_by_test_freq = false, const FitOptions& opt = {}) {
  auto in = fit_input(points, weight_by_test_freq);
  return fit_sigmoid(in.xs, in.ys, in.weights, opt);
}

inline const double kLowSupport = std::pow(10.0, 1.6);
inline const double kHighSupport = std::pow(10.0, 1.9);

struct SupportMatch {
  const FreqF1Point* low;
  const FreqF1Point* high;
};

struct SupportReport {
  std::vector<SupportMatch> matched;
  std::vector<const FreqF1Point*> unmatched;
  std::optional<double> spearman;
};

// Pairs each low-support phoneme (train_freq < low_cutoff) with the
// high-support phoneme (train_freq > high_cutoff) of the same base that has
// the largest train_freq, ties by surface. Spearman's rho is taken between
// the paired F1 values.
inline SupportReport match_low_support(const std::vector<FreqF1Point>& points,
                                       double low_cutoff = kLowSupport,
                                       double high_cutoff = kHighSupport) {
  std::map<std::string, const FreqF1Point*> best_high;
  for (const auto& p : points) {
    if (static_cast<double>(p.train_freq) <= high_cutoff) continue;
    auto& slot = best_high[p.base];
    if (!slot || p.train_freq > slot->train_freq ||
        (p.train_freq == slot->train_freq && p.surface < slot->surface)) {
      slot = &p;
    }
  }
  std::vector<const FreqF1Point*> lows;
  for (const auto& p : points) {
    if (static_cast<double>(p.train_freq) < low_cutoff) lows.push_back(&p);
  }
  std::sort(lows.begin(), lows.end(),
            [](const auto* a, const auto* b) { return a->surface < b->surface; });
  SupportReport report;
  std::vector<double> lo_f1, hi_f1;
  for (const auto* p : lows) {
    auto it = best_high.find(p->base);
    if (it == best_high.end()) {
      report.unmatched.push_back(p);
      continue;
    }
    report.matched.push_back({p, it->second});
    lo_f1.push_back(p->f1);
    hi_f1.push_back(it->second->f1);
  }
  if (report.matched.size() >= 2) report.spearman = spearman_rho(lo_f1, hi_f1);
  return report;
}

struct WorstEntry {
  std::string surface;
  double f1;
  std::size_t test_freq;
};

// Ascending F1, then descending test frequency, then surface.
inline std::vector<WorstEntry> worst_phonemes(std::vector<WorstEntry> entries, std::size_t k = 10) {
  std::sort(entries.begin(), entries.end(), [](const WorstEntry& a, const WorstEntry& b) {
    if (a.f1 != b.f1) return a.f1 < b.f1;
    if (a.test_freq != b.test_freq) return a.test_freq > b.test_freq;
    return a.surface < b.surface;
  });
  if (entries.size() > k) entries.resize(k);
  return entries;
}

// Up to 3 decimals, trailing zeros trimmed but one kept: 0.0, 0.15, 1.0.
inline std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

// "(<phoneme>, F1, test frequency)"
inline std::string format_triplet(const WorstEntry& e) {
  return "(" + e.surface + ", " + format_score(e.f1) + ", " + std::to_string(e.test_freq) + ")";
}

// IPA vowel letters; a base starting with one of these is class V.
inline bool is_vowel_base(std::string_view base) {
  static const std::u32string vowels =
      U"iyɨʉɯuɪʏʊeøɘɵɤoəɛœɜɞʌɔæɐaɶɑɒ";
  if (base.empty()) return false;
  std::size_t pos = 0;
  char32_t c = unicode::next_code_point(base, pos);
  return vowels.find(c) != std::u32string::npos;
}

// Category label such as "C", "Cʼʷ" or "Vːˤ": consonant/vowel class of the
// base followed by the diacritics in surface order.
inline std::string category_of(const ipa::Phoneme& p) {
  std::string label = is_vowel_base(p.base) ? "V" : "C";
  for (const auto& d : p.diacritics) label += d;
  return label;
}

struct CategoryScore {
  std::string label;
  int complexity;
  double mean_f1;
  std::size_t members;
};

struct CategoryTable {
  std::vector<CategoryScore> rows;
  std::optional<double> pearson;  // complexity vs mean F1 across categories
};

// Averages F1 over phonemes of each category; categories are ordered by
// label. `phonemes[i]` pairs with `f1[i]`.
inline CategoryTable category_scores(const std::vector<ipa::Phoneme>& phonemes,
                                     const std::vector<double>& f1) {
  std::map<std::string, CategoryScore> acc;
  for (std::size_t i = 0; i < phonemes.size(); ++i) {
    auto label = category_of(phonemes[i]);
    auto [it, fresh] = acc.try_emplace(label, CategoryScore{label, phonemes[i].complexity(), 0.0, 0});
    it->second.mean_f1 += f1[i];
    it->second.members += 1;
  }
  CategoryTable table;
  std::vector<double> cx, cy;
  for (auto& [label, row] : acc) {
    row.mean_f1 /= static_cast<double>(row.members);
    cx.push_back(row.complexity);
    cy.push_back(row.mean_f1);
    table.rows.push_back(row);
  }
  table.pearson = pearson_r(cx, cy);
  return table;
}

}  // namespace phonkit::analysis
