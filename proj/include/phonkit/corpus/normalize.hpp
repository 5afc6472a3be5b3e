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

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "phonkit/core/unicode.hpp"
#include "phonkit/ipa/transliterate.hpp"

namespace phonkit::corpus {

// Punctuation removed by default. Apostrophes stay because romanized
// sources use them for ejectives, and '|' stays because it is a
// pharyngealization marker until a table maps it.
inline constexpr std::string_view kDefaultStripSet = ".,;:!?\"“”„«»()[]{}…–—-/";

struct NormalizeRules {
  std::vector<ipa::TransliterationTable> tables;  // applied in order
  std::u32string strip_set = unicode::to_u32(kDefaultStripSet);
};

// Tables (source -> IPA, pass-through), then punctuation stripping, NFC and
// whitespace collapsing.
inline std::string normalize(std::string_view raw, const NormalizeRules& rules) {
  std::string text = unicode::nfc(raw);
  for (const auto& table : rules.tables) text = table.apply(text, ipa::Direction::cyr_to_ipa);
  std::string kept;
  kept.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = pos;
    char32_t c = unicode::next_code_point(text, pos);
    if (rules.strip_set.find(c) != std::u32string::npos) continue;
    kept.append(text, start, pos - start);
  }
  return unicode::collapse_whitespace(unicode::nfc(kept));
}

}  // namespace phonkit::corpus
