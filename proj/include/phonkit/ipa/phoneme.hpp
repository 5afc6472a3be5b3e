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
#include <string>
#include <string_view>
#include <vector>

namespace phonkit::ipa {

// Labialization, palatalization, pharyngealization, ejective, length.
inline const std::vector<std::string>& default_diacritics() {
  static const std::vector<std::string> marks = {"ʷ", "ʲ", "ˤ", "ʼ", "ː"};
  return marks;
}

struct Phoneme {
  std::string surface;
  std::string base;
  std::vector<std::string> diacritics;

  // Base segment plus one per secondary feature.
  int complexity() const { return 1 + static_cast<int>(diacritics.size()); }
  bool is_composite() const { return !diacritics.empty(); }

  friend bool operator==(const Phoneme&, const Phoneme&) = default;
};

// Peels recognized diacritics off the end of `surface`. The first code point
// always stays in the base, so a bare mark such as "ʷ" is its own base.
inline Phoneme decompose(std::string_view surface,
                         const std::vector<std::string>& diacritics) {
  Phoneme p;
  p.surface = std::string(surface);
  std::string_view rest = surface;
  std::size_t first_len = 1;
  if (!surface.empty()) {
    auto lead = static_cast<unsigned char>(surface[0]);
    first_len = lead < 0x80 ? 1 : lead < 0xE0 ? 2 : lead < 0xF0 ? 3 : 4;
    first_len = std::min(first_len, surface.size());
  }
  std::vector<std::string> peeled;
  while (rest.size() > first_len) {
    const std::string* best = nullptr;
    for (const auto& d : diacritics) {
      if (d.empty() || d.size() > rest.size() - first_len) continue;
      if (rest.ends_with(d) && (!best || d.size() > best->size())) best = &d;
    }
    if (!best) break;
    peeled.push_back(*best);
    rest.remove_suffix(best->size());
  }
  std::reverse(peeled.begin(), peeled.end());
  p.base = std::string(rest);
  p.diacritics = std::move(peeled);
  return p;
}

inline int complexity(const Phoneme& p) { return p.complexity(); }

}  // namespace phonkit::ipa
