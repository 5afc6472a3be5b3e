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
#include <cstdlib>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/core/unicode.hpp"

namespace phonkit::corpus {

struct AnnotationInterval {
  std::string tier_name;
  double t_start = 0.0;
  double t_end = 0.0;
  std::string text;

  friend bool operator==(const AnnotationInterval&, const AnnotationInterval&) = default;
};

struct Annotations {
  std::vector<AnnotationInterval> intervals;
  std::vector<std::string> warnings;
};

// Within one tier intervals must have positive length and must not overlap.
inline void check_tier_order(const std::vector<AnnotationInterval>& intervals,
                             std::size_t first, const std::string& source) {
  for (std::size_t i = first; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (!(iv.t_start >= 0.0 && iv.t_start < iv.t_end)) {
      throw ParseError(source + ": interval " + std::to_string(i - first + 1) + " of tier '" +
                       iv.tier_name + "' has start " + std::to_string(iv.t_start) +
                       " not before end " + std::to_string(iv.t_end));
    }
    if (i > first && iv.t_start < intervals[i - 1].t_end) {
      throw ParseError(source + ": intervals " + std::to_string(i - first) + " and " +
                       std::to_string(i - first + 1) + " of tier '" + iv.tier_name +
                       "' overlap");
    }
  }
}

namespace detail {

// Token stream shared by the long ("xmin = 0") and short text formats:
// numbers, quoted strings and <flags>. Labels, '=' signs, bracketed
// indices and '!' comments are skipped.
class TextGridScanner {
 public:
  enum class Kind { number, string, flag, end };
  struct Token {
    Kind kind;
    std::string text;
    double number = 0.0;
    std::size_t line = 0;
  };

  explicit TextGridScanner(std::string_view text) : text_(text) {}

  Token next() {
    for (;;) {
      skip_space();
      if (pos_ >= text_.size()) return {Kind::end, {}, 0.0, line_};
      char c = text_[pos_];
      if (c == '!') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '"') return read_string();
      if (c == '<') {
        std::size_t close = text_.find('>', pos_);
        if (close == std::string_view::npos) throw ParseError("unterminated <flag>", line_);
        Token t{Kind::flag, std::string(text_.substr(pos_, close - pos_ + 1)), 0.0, line_};
        pos_ = close + 1;
        return t;
      }
      if (c == '[') {
        std::size_t close = text_.find(']', pos_);
        if (close == std::string_view::npos) throw ParseError("unterminated [index]", line_);
        count_lines(pos_, close);
        pos_ = close + 1;
        continue;
      }
      if (c == '-' || c == '+' || c == '.' || (c >= '0' && c <= '9')) return read_number();
      // A bare label word ("xmin", "intervals:", "=", "tiers?") is skipped.
      while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '"' &&
             text_[pos_] != '[') {
        ++pos_;
      }
    }
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  void count_lines(std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to; ++i) {
      if (text_[i] == '\n') ++line_;
    }
  }

  // Praat strings escape '"' by doubling it.
  Token read_string() {
    Token t{Kind::string, {}, 0.0, line_};
    ++pos_;
    for (;;) {
      if (pos_ >= text_.size()) throw ParseError("unterminated string", t.line);
      char c = text_[pos_++];
      if (c == '\n') ++line_;
      if (c == '"') {
        if (pos_ < text_.size() && text_[pos_] == '"') {
          t.text += '"';
          ++pos_;
          continue;
        }
        return t;
      }
      t.text += c;
    }
  }

  Token read_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_])) ++pos_;
    std::string s(text_.substr(start, pos_ - start));
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw ParseError("bad number '" + s + "'", line_);
    return {Kind::number, s, v, line_};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace detail

// Praat TextGrid in long or short text format, UTF-8 or UTF-16 with BOM.
// Interval tiers are returned in file order; point tiers are skipped with a
// warning.
inline Annotations parse_textgrid_text(std::string_view bytes, const std::string& source = "TextGrid") {
  std::string text = unicode::decode_text_bytes(bytes);
  detail::TextGridScanner scan(text);
  using Kind = detail::TextGridScanner::Kind;
  auto expect = [&](Kind kind, const char* what) {
    auto t = scan.next();
    if (t.kind != kind) {
      throw ParseError(source + ": expected " + what +
                           (t.kind == Kind::end ? ", found end of file" : ", found '" + t.text + "'"),
                       t.line);
    }
    return t;
  };
  auto file_type = expect(Kind::string, "file type");
  if (file_type.text != "ooTextFile") {
    throw ParseError(source + ": not a Praat text file", file_type.line);
  }
  auto object = expect(Kind::string, "object class");
  if (object.text != "TextGrid") {
    throw ParseError(source + ": object class is '" + object.text + "', not TextGrid", object.line);
  }
  auto xmin = expect(Kind::number, "xmin");
  auto xmax = expect(Kind::number, "xmax");
  if (xmin.number > xmax.number) throw ParseError(source + ": xmin > xmax", xmax.line);
  Annotations out;
  auto flag = expect(Kind::flag, "<exists> or <absent>");
  if (flag.text == "<absent>") return out;
  if (flag.text != "<exists>") throw ParseError(source + ": unexpected flag " + flag.text, flag.line);
  auto tiers = expect(Kind::number, "tier count");
  for (long tier = 0; tier < static_cast<long>(tiers.number); ++tier) {
    auto cls = expect(Kind::string, "tier class");
    auto name = expect(Kind::string, "tier name");
    auto txmin = expect(Kind::number, "tier xmin");
    auto txmax = expect(Kind::number, "tier xmax");
    if (txmin.number > txmax.number) throw ParseError(source + ": tier xmin > xmax", txmax.line);
    auto count = expect(Kind::number, "interval count");
    if (cls.text == "IntervalTier") {
      std::size_t first = out.intervals.size();
      for (long i = 0; i < static_cast<long>(count.number); ++i) {
        auto a = expect(Kind::number, "interval xmin");
        auto b = expect(Kind::number, "interval xmax");
        auto label = expect(Kind::string, "interval text");
        if (a.number > b.number) throw ParseError(source + ": interval xmin > xmax", b.line);
        out.intervals.push_back({name.text, a.number, b.number, label.text});
      }
      check_tier_order(out.intervals, first, source);
    } else if (cls.text == "TextTier") {
      for (long i = 0; i < static_cast<long>(count.number); ++i) {
        expect(Kind::number, "point time");
        expect(Kind::string, "point mark");
      }
      out.warnings.push_back(source + ": skipped point tier '" + name.text + "'");
    } else {
      throw ParseError(source + ": unknown tier class '" + cls.text + "'", cls.line);
    }
  }
  return out;
}

inline Annotations parse_textgrid(const std::filesystem::path& path) {
  return parse_textgrid_text(io::read_file(path), path.string());
}

}  // namespace phonkit::corpus
