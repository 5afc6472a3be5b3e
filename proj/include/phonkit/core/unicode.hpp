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

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phonkit/core/error.hpp"

namespace phonkit::unicode {

namespace detail {

inline const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || n == nullptr) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  return *n;
}

}  // namespace detail

// Decodes one code point starting at `pos`; advances `pos`. Invalid bytes
// decode to U+FFFD and consume one byte.
inline char32_t next_code_point(std::string_view text, std::size_t& pos) {
  UChar32 c = 0;
  int32_t i = static_cast<int32_t>(pos);
  U8_NEXT(reinterpret_cast<const uint8_t*>(text.data()), i,
          static_cast<int32_t>(text.size()), c);
  pos = static_cast<std::size_t>(i);
  return c < 0 ? U'\uFFFD' : static_cast<char32_t>(c);
}

inline bool is_valid_utf8(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    UChar32 c = 0;
    int32_t i = static_cast<int32_t>(pos);
    U8_NEXT(reinterpret_cast<const uint8_t*>(text.data()), i,
            static_cast<int32_t>(text.size()), c);
    if (c < 0) return false;
    pos = static_cast<std::size_t>(i);
  }
  return true;
}

inline std::u32string to_u32(std::string_view text) {
  std::u32string out;
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(next_code_point(text, pos));
  return out;
}

inline void append_utf8(std::string& out, char32_t c) {
  uint8_t buf[4];
  int32_t len = 0;
  UBool error = false;
  U8_APPEND(buf, len, 4, static_cast<UChar32>(c), error);
  if (error) {
    out += "\xEF\xBF\xBD";
    return;
  }
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(len));
}

inline std::string to_utf8(std::u32string_view text) {
  std::string out;
  for (char32_t c : text) append_utf8(out, c);
  return out;
}

// Splits UTF-8 text into one string per code point.
inline std::vector<std::string> code_points(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = pos;
    next_code_point(text, pos);
    out.emplace_back(text.substr(start, pos - start));
  }
  return out;
}

inline std::size_t code_point_count(std::string_view text) {
  std::size_t n = 0, pos = 0;
  while (pos < text.size()) {
    next_code_point(text, pos);
    ++n;
  }
  return n;
}

inline std::string nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString out = detail::nfc_instance().normalize(in, status);
  if (U_FAILURE(status)) throw NormalizationError("NFC normalization failed");
  std::string result;
  out.toUTF8String(result);
  return result;
}

inline bool is_nfc(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString in = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  UBool ok = detail::nfc_instance().isNormalized(in, status);
  return U_SUCCESS(status) && ok;
}

inline bool is_whitespace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0;
}

// Nonspacing and enclosing marks attach to the preceding character.
inline bool is_combining_mark(char32_t c) {
  int8_t t = u_charType(static_cast<UChar32>(c));
  return t == U_NON_SPACING_MARK || t == U_ENCLOSING_MARK ||
         t == U_COMBINING_SPACING_MARK;
}

// The code point at `pos` plus any combining marks that follow it.
inline std::string grapheme_at(std::string_view text, std::size_t pos) {
  std::size_t end = pos;
  if (end >= text.size()) return {};
  next_code_point(text, end);
  while (end < text.size()) {
    std::size_t probe = end;
    char32_t c = next_code_point(text, probe);
    if (!is_combining_mark(c)) break;
    end = probe;
  }
  return std::string(text.substr(pos, end - pos));
}

// Collapses whitespace runs to one ASCII space and trims both ends.
inline std::string collapse_whitespace(std::string_view text) {
  std::string out;
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = pos;
    char32_t c = next_code_point(text, pos);
    if (is_whitespace(c)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.append(text.substr(start, pos - start));
  }
  return out;
}

// Splits on Unicode whitespace, dropping empty fields.
inline std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t start = pos;
    char32_t c = next_code_point(text, pos);
    if (is_whitespace(c)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.append(text.substr(start, pos - start));
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

// Converts raw file bytes to UTF-8, honouring a UTF-8 or UTF-16 BOM. Input
// without a BOM is taken as UTF-8.
inline std::string decode_text_bytes(std::string_view bytes) {
  auto u8 = [](char c) { return static_cast<uint8_t>(c); };
  if (bytes.size() >= 3 && u8(bytes[0]) == 0xEF && u8(bytes[1]) == 0xBB &&
      u8(bytes[2]) == 0xBF) {
    return std::string(bytes.substr(3));
  }
  bool le = bytes.size() >= 2 && u8(bytes[0]) == 0xFF && u8(bytes[1]) == 0xFE;
  bool be = bytes.size() >= 2 && u8(bytes[0]) == 0xFE && u8(bytes[1]) == 0xFF;
  if (!le && !be) return std::string(bytes);
  if (bytes.size() % 2 != 0) throw ParseError("odd byte count in UTF-16 text");
  std::string out;
  std::size_t i = 2;
  auto unit = [&](std::size_t at) -> char16_t {
    return le ? static_cast<char16_t>(u8(bytes[at]) | (u8(bytes[at + 1]) << 8))
              : static_cast<char16_t>((u8(bytes[at]) << 8) | u8(bytes[at + 1]));
  };
  while (i + 1 < bytes.size()) {
    char16_t w = unit(i);
    i += 2;
    char32_t c = w;
    if (w >= 0xD800 && w <= 0xDBFF) {
      if (i + 1 >= bytes.size()) throw ParseError("truncated UTF-16 surrogate");
      char16_t lo = unit(i);
      i += 2;
      if (lo < 0xDC00 || lo > 0xDFFF) throw ParseError("bad UTF-16 surrogate");
      c = 0x10000 + ((static_cast<char32_t>(w) - 0xD800) << 10) +
          (static_cast<char32_t>(lo) - 0xDC00);
    }
    append_utf8(out, c);
  }
  return out;
}

}  // namespace phonkit::unicode
