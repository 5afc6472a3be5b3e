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
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "phonkit/core/unicode.hpp"
#include "phonkit/corpus/manifest.hpp"
#include "phonkit/ipa/inventory.hpp"
#include "phonkit/ipa/segment.hpp"

namespace phonkit::corpus {

struct SplitSummary {
  std::size_t sentences = 0;
  double seconds = 0.0;
  std::size_t unique_words = 0;
  std::size_t unique_phonemes = 0;
  std::size_t composites = 0;

  double minutes() const { return seconds / 60.0; }
  double composite_percent() const {
    return unique_phonemes ? 100.0 * static_cast<double>(composites) /
                                 static_cast<double>(unique_phonemes)
                           : 0.0;
  }
};

// Train includes the validation holdout, as in the usual dataset tables.
struct CorpusSummary {
  SplitSummary train;
  SplitSummary test;
  std::size_t validation = 0;
};

inline SplitSummary summarize_split(const std::vector<const UtteranceRecord*>& records,
                                    const ipa::PhonemeInventory& inv) {
  SplitSummary s;
  std::set<std::string> words;
  std::set<std::size_t> phonemes;
  for (const auto* r : records) {
    ++s.sentences;
    s.seconds += r->duration_s;
    for (auto& w : unicode::split_words(r->ipa)) words.insert(std::move(w));
    for (std::size_t i : ipa::segment(r->ipa, inv)) {
      if (!inv.is_special(i)) phonemes.insert(i);
    }
  }
  s.unique_words = words.size();
  s.unique_phonemes = phonemes.size();
  for (std::size_t i : phonemes) {
    if (inv.phoneme(i).is_composite()) ++s.composites;
  }
  return s;
}

inline CorpusSummary summarize(const std::vector<UtteranceRecord>& records,
                               const ipa::PhonemeInventory& inv) {
  std::vector<const UtteranceRecord*> train, test;
  CorpusSummary out;
  for (const auto& r : records) {
    if (r.split == Split::test) {
      test.push_back(&r);
    } else {
      train.push_back(&r);
      if (r.split == Split::val) ++out.validation;
    }
  }
  out.train = summarize_split(train, inv);
  out.test = summarize_split(test, inv);
  return out;
}

// Plain-text table: Split | Sentences / Length | Words | Phonemes | Composite.
inline std::string format_summary(const CorpusSummary& s, const std::string& language) {
  auto row = [&](const char* split, const SplitSummary& x) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-10s %-6s %9zu / %.0fm %8zu %9zu %6zu (%.0f%%)\n",
                  language.c_str(), split, x.sentences, std::round(x.minutes()), x.unique_words,
                  x.unique_phonemes, x.composites, std::round(x.composite_percent()));
    return std::string(buf);
  };
  std::string out =
      "Language   Split  Sentences / Length   Words  Phonemes  Composite\n";
  out += row("Train", s.train);
  out += row("Test", s.test);
  out += "(train includes " + std::to_string(s.validation) + " validation sentences)\n";
  return out;
}

}  // namespace phonkit::corpus
