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
#include <string>
#include <string_view>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/ipa/inventory.hpp"

namespace phonkit::ipa {

// Greedy longest-match tokenization. Each whitespace character emits the
// separator index. Text that is not NFC is normalized first; byte offsets in
// SegmentationError refer to the normalized text.
inline std::vector<std::size_t> segment(std::string_view text,
                                        const PhonemeInventory& inv) {
  std::string normalized;
  if (!unicode::is_nfc(text)) {
    normalized = unicode::nfc(text);
    text = normalized;
  }
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t probe = pos;
    char32_t c = unicode::next_code_point(text, probe);
    if (unicode::is_whitespace(c)) {
      out.push_back(inv.separator_index());
      pos = probe;
      continue;
    }
    bool matched = false;
    for (std::size_t len : inv.match_lengths()) {
      if (len > text.size() - pos) continue;
      if (auto idx = inv.match(text.substr(pos, len))) {
        out.push_back(*idx);
        pos += len;
        matched = true;
        break;
      }
    }
    if (!matched) throw SegmentationError(pos, unicode::grapheme_at(text, pos));
  }
  return out;
}

// Inverse of segment(): separators render as a single space, other specials
// as their surface.
inline std::string render(const std::vector<std::size_t>& indices,
                          const PhonemeInventory& inv) {
  std::string out;
  for (std::size_t i : indices) {
    if (i == inv.separator_index()) {
      out += ' ';
    } else {
      out += inv.surface(i);
    }
  }
  return out;
}

// Phoneme indices with separators (and other specials) removed.
inline std::vector<std::size_t> strip_specials(
    const std::vector<std::size_t>& indices, const PhonemeInventory& inv) {
  std::vector<std::size_t> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (!inv.is_special(i)) out.push_back(i);
  }
  return out;
}

}  // namespace phonkit::ipa
