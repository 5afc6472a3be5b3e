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
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/ipa/phoneme.hpp"

namespace phonkit::ipa {

// Ordered phoneme vocabulary of one language. Index order is the output-layer
// column order; special tokens (CTC blank, word separator, unk and any
// others) live in the same index space but are never produced by
// segmentation.
class PhonemeInventory {
 public:
  struct Definition {
    std::string language;
    std::vector<std::string> surfaces;
    std::size_t blank_index = 0;
    std::size_t separator_index = 1;
    std::optional<std::size_t> unk_index;
    std::vector<std::size_t> other_specials;
    // Marks recognized in addition to default_diacritics().
    std::vector<std::string> extra_diacritics;
  };

  PhonemeInventory() = default;

  explicit PhonemeInventory(Definition def) : language_(std::move(def.language)) {
    diacritics_ = default_diacritics();
    for (auto& d : def.extra_diacritics) {
      if (std::find(diacritics_.begin(), diacritics_.end(), d) ==
          diacritics_.end()) {
        diacritics_.push_back(d);
        extra_diacritics_.push_back(d);
      }
    }
    const std::size_t n = def.surfaces.size();
    auto check_index = [n](std::size_t i, const char* what) {
      if (i >= n) {
        throw MissingSpecialToken(std::string(what) + " index out of range");
      }
    };
    check_index(def.blank_index, "blank");
    check_index(def.separator_index, "separator");
    if (def.blank_index == def.separator_index) {
      throw MissingSpecialToken("blank and separator must be distinct");
    }
    blank_ = def.blank_index;
    separator_ = def.separator_index;
    unk_ = def.unk_index;
    special_.assign(n, false);
    special_[blank_] = special_[separator_] = true;
    if (unk_) {
      check_index(*unk_, "unk");
      special_[*unk_] = true;
    }
    for (std::size_t i : def.other_specials) {
      check_index(i, "special");
      special_[i] = true;
    }
    phonemes_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& s = def.surfaces[i];
      if (s.empty()) throw ParseError("empty phoneme surface");
      if (!unicode::is_nfc(s)) {
        throw NormalizationError("phoneme '" + s + "' is not NFC");
      }
      if (!index_.emplace(s, i).second) {
        throw DuplicatePhoneme("duplicate phoneme '" + s + "'");
      }
      phonemes_.push_back(decompose(s, diacritics_));
      if (!special_[i]) match_lengths_.insert(s.size());
    }
  }

  // Inventory file: one surface per line, '#' comment lines, and the
  // directives !blank, !sep, !unk, !special (each adds its surface at that
  // position), !diacritic <mark> and !lang <id>.
  static PhonemeInventory parse(std::string_view text) {
    Definition def;
    std::optional<std::size_t> blank, sep;
    auto lines = io::split_lines(text);
    std::unordered_map<std::string, std::size_t> first_line;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
      std::string_view line = io::trim(lines[ln]);
      if (ln == 0 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
      if (line.empty() || line.front() == '#') continue;
      if (!unicode::is_valid_utf8(line)) {
        throw ParseError("invalid UTF-8", ln + 1);
      }
      if (!unicode::is_nfc(line)) {
        throw NormalizationError("line is not NFC", ln + 1);
      }
      std::string surface;
      if (line.front() == '!') {
        auto space = line.find_first_of(" \t");
        std::string_view directive = line.substr(0, space);
        std::string_view arg =
            space == std::string_view::npos ? "" : io::trim(line.substr(space));
        if (arg.empty()) {
          throw ParseError("directive " + std::string(directive) +
                               " needs an argument",
                           ln + 1);
        }
        if (directive == "!lang") {
          def.language = std::string(arg);
          continue;
        }
        if (directive == "!diacritic") {
          def.extra_diacritics.emplace_back(arg);
          continue;
        }
        std::size_t idx = def.surfaces.size();
        if (directive == "!blank") {
          if (blank) throw ParseError("second !blank directive", ln + 1);
          blank = idx;
        } else if (directive == "!sep") {
          if (sep) throw ParseError("second !sep directive", ln + 1);
          sep = idx;
        } else if (directive == "!unk") {
          if (def.unk_index) throw ParseError("second !unk directive", ln + 1);
          def.unk_index = idx;
        } else if (directive == "!special") {
          def.other_specials.push_back(idx);
        } else {
          throw ParseError("unknown directive " + std::string(directive),
                           ln + 1);
        }
        surface = std::string(arg);
      } else {
        surface = std::string(line);
      }
      if (surface.find_first_of(" \t") != std::string::npos) {
        throw ParseError("phoneme surface contains whitespace", ln + 1);
      }
      auto [it, fresh] = first_line.emplace(surface, ln + 1);
      if (!fresh) {
        throw DuplicatePhoneme("duplicate phoneme '" + surface + "' (line " +
                               std::to_string(ln + 1) + ", first on line " +
                               std::to_string(it->second) + ")");
      }
      def.surfaces.push_back(std::move(surface));
    }
    if (!blank) throw MissingSpecialToken("inventory lacks a !blank directive");
    if (!sep) throw MissingSpecialToken("inventory lacks a !sep directive");
    def.blank_index = *blank;
    def.separator_index = *sep;
    return PhonemeInventory(std::move(def));
  }

  static PhonemeInventory load(const std::filesystem::path& path) {
    return parse(io::read_file(path));
  }

  // Canonical text form; parse(serialize()) reproduces the inventory.
  std::string serialize() const {
    std::string out;
    if (!language_.empty()) out += "!lang " + language_ + "\n";
    for (const auto& d : extra_diacritics_) out += "!diacritic " + d + "\n";
    for (std::size_t i = 0; i < phonemes_.size(); ++i) {
      const std::string& s = phonemes_[i].surface;
      if (i == blank_) {
        out += "!blank " + s;
      } else if (i == separator_) {
        out += "!sep " + s;
      } else if (unk_ && i == *unk_) {
        out += "!unk " + s;
      } else if (special_[i]) {
        out += "!special " + s;
      } else {
        out += s;
      }
      out += '\n';
    }
    return out;
  }

  void save(const std::filesystem::path& path) const {
    io::write_file(path, serialize());
  }

  std::size_t size() const { return phonemes_.size(); }
  const std::string& language() const { return language_; }
  const Phoneme& phoneme(std::size_t i) const { return phonemes_.at(i); }
  const std::string& surface(std::size_t i) const {
    return phonemes_.at(i).surface;
  }
  const std::vector<Phoneme>& phonemes() const { return phonemes_; }
  std::size_t blank_index() const { return blank_; }
  std::size_t separator_index() const { return separator_; }
  std::optional<std::size_t> unk_index() const { return unk_; }
  bool is_special(std::size_t i) const { return special_.at(i); }
  const std::vector<std::string>& recognized_diacritics() const {
    return diacritics_;
  }

  std::optional<std::size_t> index_of(std::string_view surface) const {
    auto it = index_.find(std::string(surface));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  // Index of a matchable (non-special) phoneme, if any.
  std::optional<std::size_t> match(std::string_view surface) const {
    auto i = index_of(surface);
    if (i && special_[*i]) return std::nullopt;
    return i;
  }

  // Distinct byte lengths of matchable surfaces, longest first.
  const std::set<std::size_t, std::greater<>>& match_lengths() const {
    return match_lengths_;
  }

  // Non-special indices in vocabulary order.
  std::vector<std::size_t> regular_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i) {
      if (!special_[i]) out.push_back(i);
    }
    return out;
  }

 private:
  std::string language_;
  std::vector<Phoneme> phonemes_;
  std::vector<std::string> diacritics_;
  std::vector<std::string> extra_diacritics_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<bool> special_;
  std::set<std::size_t, std::greater<>> match_lengths_;
  std::size_t blank_ = 0;
  std::size_t separator_ = 1;
  std::optional<std::size_t> unk_;
};

}  // namespace phonkit::ipa
