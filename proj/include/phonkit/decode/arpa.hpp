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
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/decode/ngram.hpp"

namespace phonkit::lm {

namespace detail {

inline std::string format_log10(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline double parse_double(std::string_view s, std::size_t line) {
  std::string tmp(s);
  char* end = nullptr;
  double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw ParseError("bad number '" + tmp + "'", line);
  }
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

// Standard ARPA text: \data\ header with per-order counts, one \N-grams:
// section per order (log10 prob, words, optional log10 back-off), \end\.
inline std::string to_arpa(const NGramModel& model) {
  std::string out = "\\data\\\n";
  for (int n = 1; n <= model.order(); ++n) {
    out += "ngram " + std::to_string(n) + "=" + std::to_string(model.table(n).size()) + "\n";
  }
  const auto& vocab = model.vocabulary();
  for (int n = 1; n <= model.order(); ++n) {
    out += "\n\\" + std::to_string(n) + "-grams:\n";
    for (const auto& [gram, entry] : model.table(n)) {
      out += detail::format_log10(entry.log10_prob);
      out += '\t';
      for (std::size_t k = 0; k < gram.size(); ++k) {
        if (k) out += ' ';
        out += vocab[gram[k]];
      }
      if (n < model.order()) {
        out += '\t';
        out += detail::format_log10(entry.log10_backoff);
      }
      out += '\n';
    }
  }
  out += "\n\\end\\\n";
  return out;
}

inline void export_arpa(const NGramModel& model, const std::filesystem::path& path) {
  io::write_file(path, to_arpa(model));
}

inline NGramModel parse_arpa(std::string_view text) {
  auto lines = io::split_lines(text);
  std::size_t ln = 0;
  auto skip_blank = [&] {
    while (ln < lines.size() && io::trim(lines[ln]).empty()) ++ln;
  };
  skip_blank();
  if (ln >= lines.size() || io::trim(lines[ln]) != "\\data\\") {
    throw ParseError("expected \\data\\ header", ln < lines.size() ? ln + 1 : lines.size());
  }
  ++ln;
  std::vector<std::size_t> counts;
  while (ln < lines.size()) {
    std::string_view line = io::trim(lines[ln]);
    if (line.empty()) {
      ++ln;
      if (!counts.empty()) break;
      continue;
    }
    if (!line.starts_with("ngram ")) break;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("malformed ngram count line", ln + 1);
    std::size_t order = 0, count = 0;
    auto lhs = io::trim(line.substr(6, eq - 6));
    auto rhs = io::trim(line.substr(eq + 1));
    if (std::from_chars(lhs.data(), lhs.data() + lhs.size(), order).ec != std::errc{} ||
        std::from_chars(rhs.data(), rhs.data() + rhs.size(), count).ec != std::errc{} ||
        order != counts.size() + 1) {
      throw ParseError("malformed ngram count line", ln + 1);
    }
    counts.push_back(count);
    ++ln;
  }
  if (counts.empty()) throw ParseError("no ngram counts in \\data\\ section", ln);

  struct Raw {
    std::vector<std::string> words;
    double prob;
    double backoff;
  };
  std::vector<std::vector<Raw>> sections(counts.size());
  std::vector<std::string> vocab;
  std::unordered_map<std::string, WordId> ids;
  for (std::size_t n = 1; n <= counts.size(); ++n) {
    skip_blank();
    std::string header = "\\" + std::to_string(n) + "-grams:";
    if (ln >= lines.size() || io::trim(lines[ln]) != header) {
      throw ParseError("expected " + header, std::min(ln + 1, lines.size()));
    }
    ++ln;
    for (std::size_t k = 0; k < counts[n - 1]; ++k, ++ln) {
      if (ln >= lines.size()) throw ParseError("truncated " + header + " section", lines.size());
      auto fields = detail::split_fields(lines[ln]);
      if (fields.size() != n + 1 && fields.size() != n + 2) {
        throw ParseError("expected " + std::to_string(n) + " words in " + header, ln + 1);
      }
      Raw r;
      r.prob = detail::parse_double(fields[0], ln + 1);
      for (std::size_t w = 1; w <= n; ++w) r.words.emplace_back(fields[w]);
      r.backoff = fields.size() == n + 2 ? detail::parse_double(fields[n + 1], ln + 1) : 0.0;
      if (n == 1 && ids.emplace(r.words[0], static_cast<WordId>(vocab.size())).second) {
        vocab.push_back(r.words[0]);
      }
      sections[n - 1].push_back(std::move(r));
    }
  }
  skip_blank();
  if (ln >= lines.size() || io::trim(lines[ln]) != "\\end\\") {
    throw ParseError("expected \\end\\", std::min(ln + 1, lines.size()));
  }
  for (auto special : {kBos, kEos, kUnk}) {
    if (!ids.count(std::string(special))) {
      ids.emplace(std::string(special), static_cast<WordId>(vocab.size()));
      vocab.emplace_back(special);
    }
  }
  NGramModel model(static_cast<int>(counts.size()), vocab);
  for (std::size_t n = 1; n <= sections.size(); ++n) {
    for (const auto& r : sections[n - 1]) {
      Gram g;
      for (const auto& w : r.words) {
        auto id = model.find(w);
        if (!id) throw ParseError("word '" + w + "' missing from the 1-grams section");
        g.push_back(*id);
      }
      model.set(g, {r.prob, r.backoff});
    }
  }
  // <unk> without a unigram gets no mass; KenLM-style files always list it.
  return model;
}

inline NGramModel import_arpa(const std::filesystem::path& path) {
  return parse_arpa(io::read_file(path));
}

}  // namespace phonkit::lm
