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
#include <string>
#include <string_view>
#include <vector>

#include "phonkit/core/unicode.hpp"
#include "phonkit/ipa/inventory.hpp"
#include "phonkit/ipa/segment.hpp"
#include "phonkit/metrics/align.hpp"

namespace phonkit::metrics {

enum class Level { word, character, phoneme };

inline const char* level_name(Level level) {
  switch (level) {
    case Level::word:
      return "WER";
    case Level::character:
      return "CER";
    case Level::phoneme:
      return "PER";
  }
  return "?";
}

// Word tokens split on whitespace. Character tokens are the code points of
// the NFC, whitespace-collapsed text (single spaces count as characters).
// Phoneme tokens are the segmentation with word separators removed.
inline std::vector<std::string> tokenize(Level level, std::string_view text,
                                         const ipa::PhonemeInventory* inv) {
  switch (level) {
    case Level::word:
      return unicode::split_words(unicode::nfc(text));
    case Level::character:
      return unicode::code_points(unicode::collapse_whitespace(unicode::nfc(text)));
    case Level::phoneme: {
      if (inv == nullptr) throw Error("phoneme level needs an inventory");
      std::vector<std::string> out;
      for (std::size_t i : ipa::segment(text, *inv)) {
        if (!inv->is_special(i)) out.push_back(inv->surface(i));
      }
      return out;
    }
  }
  return {};
}

struct ErrorCounts {
  std::size_t edits = 0;
  std::size_t ref_tokens = 0;

  double rate() const {
    return static_cast<double>(edits) /
           static_cast<double>(std::max<std::size_t>(1, ref_tokens));
  }

  ErrorCounts& operator+=(const ErrorCounts& o) {
    edits += o.edits;
    ref_tokens += o.ref_tokens;
    return *this;
  }
};

inline ErrorCounts error_counts(Level level, std::string_view ref,
                                std::string_view hyp,
                                const ipa::PhonemeInventory* inv = nullptr) {
  auto r = tokenize(level, ref, inv);
  auto h = tokenize(level, hyp, inv);
  return {edit_distance(r, h), r.size()};
}

// edit distance / max(1, |ref|); can exceed 1.
inline double error_rate(Level level, std::string_view ref, std::string_view hyp,
                         const ipa::PhonemeInventory* inv = nullptr) {
  return error_counts(level, ref, hyp, inv).rate();
}

// Corpus rate as total edits over total reference tokens.
inline double corpus_error_rate(const std::vector<ErrorCounts>& per_utterance) {
  ErrorCounts total;
  for (const auto& c : per_utterance) total += c;
  return total.rate();
}

}  // namespace phonkit::metrics
