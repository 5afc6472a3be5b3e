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
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/ipa/inventory.hpp"
#include "phonkit/remap/weights.hpp"

namespace phonkit::remap {

inline constexpr const char* kPad = "<pad>";
inline constexpr const char* kBos = "<s>";
inline constexpr const char* kEos = "</s>";
inline constexpr const char* kUnk = "<unk>";
inline constexpr const char* kSep = "|";

// Splits IPA text into phoneme strings without an inventory: every code
// point that is not a recognized diacritic or combining mark starts a new
// phoneme, and a tie bar (U+0361, U+035C) also pulls in the next segment.
inline std::vector<std::string> phoneme_tokens(std::string_view text,
                                               const std::vector<std::string>& diacritics) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  bool tie = false;
  while (pos < text.size()) {
    std::size_t start = pos;
    char32_t c = unicode::next_code_point(text, pos);
    if (unicode::is_whitespace(c)) {
      tie = false;
      continue;
    }
    std::size_t mark_len = 0;
    for (const auto& d : diacritics) {
      if (!d.empty() && d.size() > mark_len && text.substr(start).starts_with(d)) {
        mark_len = d.size();
      }
    }
    bool attaches = !out.empty() && (tie || mark_len > 0 || unicode::is_combining_mark(c));
    if (mark_len > 0) pos = start + mark_len;
    if (attaches) {
      out.back().append(text.substr(start, pos - start));
    } else {
      out.emplace_back(text.substr(start, pos - start));
    }
    tie = c == U'͡' || c == U'͜';
  }
  return out;
}

// Language-specific vocabulary: the specials <pad> (CTC blank), <s>, </s>,
// <unk> and the word separator |, then every phoneme seen in the transcripts
// ordered by descending frequency, ties by byte order.
inline ipa::PhonemeInventory build_vocab(const std::vector<std::string>& transcripts,
                                         const std::vector<std::string>& extra_diacritics = {},
                                         const std::string& language = {}) {
  std::vector<std::string> marks = ipa::default_diacritics();
  for (const auto& d : extra_diacritics) {
    if (std::find(marks.begin(), marks.end(), d) == marks.end()) marks.push_back(d);
  }
  std::map<std::string, std::size_t> freq;
  for (const auto& t : transcripts) {
    for (auto& p : phoneme_tokens(unicode::nfc(t), marks)) ++freq[p];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  ipa::PhonemeInventory::Definition def;
  def.language = language;
  def.surfaces = {kPad, kBos, kEos, kUnk, kSep};
  def.blank_index = 0;
  def.other_specials = {1, 2};
  def.unk_index = 3;
  def.separator_index = 4;
  def.extra_diacritics = extra_diacritics;
  for (const auto& [surface, count] : ranked) {
    if (surface == kSep || surface == kPad || surface == kBos || surface == kEos ||
        surface == kUnk) {
      continue;
    }
    def.surfaces.push_back(surface);
  }
  return ipa::PhonemeInventory(std::move(def));
}

// For each new vocabulary entry, the old indices whose surfaces concatenate
// to it (a single index when the entry already exists in the old vocabulary).
struct CompositionMap {
  std::vector<std::vector<std::size_t>> components;

  std::size_t size() const { return components.size(); }
  const std::vector<std::size_t>& operator[](std::size_t i) const { return components[i]; }
};

namespace detail {

inline std::vector<std::size_t> decompose_surface(const std::string& surface,
                                                  const ipa::PhonemeInventory& old) {
  const std::size_t n = surface.size();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  // best[i]: fewest components covering surface[i..n); choice[i]: the
  // longest first component that achieves it.
  std::vector<std::size_t> best(n + 1, kInf), choice(n + 1, 0);
  best[n] = 0;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t len : old.match_lengths()) {
      if (len > n - i || best[i + len] == kInf) continue;
      auto idx = old.match(std::string_view(surface).substr(i, len));
      if (!idx) continue;
      if (best[i + len] + 1 < best[i]) {
        best[i] = best[i + len] + 1;
        choice[i] = len;
      }
    }
  }
  if (best[0] == kInf) {
    std::vector<bool> reach(n + 1, false);
    reach[0] = true;
    std::size_t furthest = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i]) continue;
      furthest = std::max(furthest, i);
      for (std::size_t len : old.match_lengths()) {
        if (len <= n - i && old.match(std::string_view(surface).substr(i, len))) {
          reach[i + len] = true;
        }
      }
    }
    throw UndecomposablePhoneme(surface, surface.substr(furthest));
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; i += choice[i]) {
    out.push_back(*old.match(std::string_view(surface).substr(i, choice[i])));
  }
  return out;
}

}  // namespace detail

// Specials map to the old special of the same role (blank, separator, unk)
// or, failing that, the same surface. Regular phonemes present in the old
// vocabulary map to themselves; others get the decomposition with the fewest
// components, ties going to the longest leading component.
inline CompositionMap derive_composition(const ipa::PhonemeInventory& fresh,
                                         const ipa::PhonemeInventory& old) {
  CompositionMap map;
  map.components.reserve(fresh.size());
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    const std::string& s = fresh.surface(i);
    if (fresh.is_special(i)) {
      std::optional<std::size_t> j;
      if (i == fresh.blank_index()) {
        j = old.blank_index();
      } else if (i == fresh.separator_index()) {
        j = old.separator_index();
      } else if (fresh.unk_index() && i == *fresh.unk_index() && old.unk_index()) {
        j = old.unk_index();
      } else {
        j = old.index_of(s);
      }
      if (!j) throw UndecomposablePhoneme(s, s);
      map.components.push_back({*j});
      continue;
    }
    if (auto j = old.match(s)) {
      map.components.push_back({*j});
    } else {
      map.components.push_back(detail::decompose_surface(s, old));
    }
  }
  return map;
}

enum class Mode { avg, cpy1, random };

inline std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "avg") return Mode::avg;
  if (s == "cpy1") return Mode::cpy1;
  if (s == "random") return Mode::random;
  return std::nullopt;
}

inline constexpr double kRandomStd = 0.02;

namespace detail {

// Box-Muller over mt19937_64 so the stream is identical on every standard
// library.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace detail

// Builds the output layer for `fresh` from `old`:
//   avg    column and bias are the mean over the components,
//   cpy1   column and bias are copied from the first component,
//   random every column is N(0, 0.02^2) from `seed`, biases are 0.
inline WeightBundle remap(const WeightBundle& old, const CompositionMap& map,
                          const ipa::PhonemeInventory& fresh, Mode mode,
                          std::uint64_t seed = 0) {
  old.check();
  if (!old.all_finite()) throw NonFiniteWeights("old weight bundle contains NaN or Inf");
  if (map.size() != fresh.size()) {
    throw ShapeError("composition map has " + std::to_string(map.size()) +
                     " entries for a vocabulary of " + std::to_string(fresh.size()));
  }
  WeightBundle out;
  out.d = old.d;
  out.vocab = fresh;
  out.W.assign(old.d * fresh.size(), 0.0f);
  out.b.assign(fresh.size(), 0.0f);

  if (mode == Mode::random) {
    detail::NormalStream normal(seed);
    for (auto& w : out.W) w = static_cast<float>(kRandomStd * normal.next());
    return out;
  }

  for (std::size_t i = 0; i < fresh.size(); ++i) {
    const auto& parts = map[i];
    if (parts.empty()) throw ShapeError("empty composition for '" + fresh.surface(i) + "'");
    for (std::size_t j : parts) {
      if (j >= old.columns()) {
        throw IndexOutOfRange("component index " + std::to_string(j) + " of '" +
                              fresh.surface(i) + "' exceeds old vocabulary size " +
                              std::to_string(old.columns()));
      }
    }
    float* dst = out.column(i);
    if (mode == Mode::cpy1 || parts.size() == 1) {
      std::copy_n(old.column(parts[0]), old.d, dst);
      out.b[i] = old.b[parts[0]];
      continue;
    }
    const double k = static_cast<double>(parts.size());
    for (std::size_t r = 0; r < old.d; ++r) {
      double sum = 0.0;
      for (std::size_t j : parts) sum += old.column(j)[r];
      dst[r] = static_cast<float>(sum / k);
    }
    double bias = 0.0;
    for (std::size_t j : parts) bias += old.b[j];
    out.b[i] = static_cast<float>(bias / k);
  }
  if (!out.all_finite()) throw NonFiniteWeights("remapped weights overflowed");
  return out;
}

}  // namespace phonkit::remap
