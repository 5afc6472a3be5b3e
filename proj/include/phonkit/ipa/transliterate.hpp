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

#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/core/unicode.hpp"

namespace phonkit::ipa {

enum class Direction { cyr_to_ipa, ipa_to_cyr };

// Ordered source->IPA string pairs. The same mechanism serves Cyrillic
// orthography and romanized conventions; "cyrillic" names the source side.
class TransliterationTable {
 public:
  struct Pair {
    std::string cyrillic;
    std::string ipa;
    bool preferred = false;
  };

  TransliterationTable() = default;

  explicit TransliterationTable(std::vector<Pair> pairs)
      : pairs_(std::move(pairs)) {
    std::map<std::string, std::vector<std::size_t>> by_target;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      auto& p = pairs_[i];
      p.cyrillic = unicode::nfc(p.cyrillic);
      p.ipa = unicode::nfc(p.ipa);
      if (p.cyrillic.empty()) throw ParseError("empty source string");
      if (!forward_.emplace(p.cyrillic, p.ipa).second) {
        throw DuplicatePhoneme("duplicate source string '" + p.cyrillic + "'");
      }
      forward_lengths_.insert(p.cyrillic.size());
      by_target[p.ipa].push_back(i);
    }
    for (const auto& [target, sources] : by_target) {
      if (target.empty()) continue;
      std::size_t chosen = sources.front();
      if (sources.size() > 1) {
        std::size_t preferred = 0;
        for (std::size_t i : sources) {
          if (pairs_[i].preferred) {
            ++preferred;
            chosen = i;
          }
        }
        if (preferred != 1) {
          throw ParseError("IPA target '" + target + "' has " +
                           std::to_string(sources.size()) +
                           " sources but " + std::to_string(preferred) +
                           " marked preferred (need exactly one)");
        }
      }
      reverse_.emplace(target, pairs_[chosen].cyrillic);
      reverse_lengths_.insert(target.size());
    }
  }

  // UTF-8 TSV: cyrillic, ipa, preferred (0/1). '#' lines and an optional
  // header row starting with "cyrillic" are skipped.
  static TransliterationTable parse(std::string_view text) {
    std::vector<Pair> pairs;
    auto lines = io::split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      std::string_view line = lines[ln];
      if (ln == 0 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
      if (io::trim(line).empty() || io::trim(line).front() == '#') continue;
      std::vector<std::string> cols;
      std::size_t start = 0;
      while (true) {
        auto tab = line.find('\t', start);
        cols.emplace_back(io::trim(line.substr(start, tab - start)));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
      }
      if (cols.size() >= 2 && cols[0] == "cyrillic" && cols[1] == "ipa") continue;
      if (cols.size() < 2 || cols.size() > 3) {
        throw ParseError("expected 2 or 3 tab-separated columns", ln + 1);
      }
      Pair p{cols[0], cols[1], false};
      if (cols.size() == 3) {
        if (cols[2] == "1") {
          p.preferred = true;
        } else if (cols[2] != "0" && !cols[2].empty()) {
          throw ParseError("preferred flag must be 0 or 1", ln + 1);
        }
      }
      pairs.push_back(std::move(p));
    }
    try {
      return TransliterationTable(std::move(pairs));
    } catch (const DuplicatePhoneme& e) {
      throw ParseError(e.what());
    }
  }

  static TransliterationTable load(const std::filesystem::path& path) {
    return parse(io::read_file(path));
  }

  const std::vector<Pair>& pairs() const { return pairs_; }

  std::string apply(std::string_view text, Direction dir,
                    bool strict = false) const {
    const auto& table = dir == Direction::cyr_to_ipa ? forward_ : reverse_;
    const auto& lengths =
        dir == Direction::cyr_to_ipa ? forward_lengths_ : reverse_lengths_;
    std::string normalized = unicode::nfc(text);
    std::string_view in = normalized;
    std::string out;
    std::size_t pos = 0;
    while (pos < in.size()) {
      bool matched = false;
      for (std::size_t len : lengths) {
        if (len > in.size() - pos) continue;
        auto it = table.find(std::string(in.substr(pos, len)));
        if (it != table.end()) {
          out += it->second;
          pos += len;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      std::size_t start = pos;
      char32_t c = unicode::next_code_point(in, pos);
      if (strict && !unicode::is_whitespace(c)) {
        throw TransliterationError("no mapping for '" +
                                   std::string(in.substr(start, pos - start)) +
                                   "' at byte offset " + std::to_string(start));
      }
      out.append(in.substr(start, pos - start));
    }
    return unicode::nfc(out);
  }

 private:
  std::vector<Pair> pairs_;
  std::unordered_map<std::string, std::string> forward_;
  std::unordered_map<std::string, std::string> reverse_;
  std::set<std::size_t, std::greater<>> forward_lengths_;
  std::set<std::size_t, std::greater<>> reverse_lengths_;
};

inline std::string transliterate(std::string_view text,
                                 const TransliterationTable& table,
                                 Direction dir, bool strict = false) {
  return table.apply(text, dir, strict);
}

}  // namespace phonkit::ipa
