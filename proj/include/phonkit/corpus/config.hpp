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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/corpus/normalize.hpp"

namespace phonkit::corpus {

struct IngestConfig {
  std::string language;
  std::string tier_pattern = ".*";  // ECMAScript regex on tier names
  std::string test_pattern;         // regex on file names; matches are test data
  std::u32string strip_set = unicode::to_u32(kDefaultStripSet);
  std::uint64_t split_seed = 13;
  double val_ratio = 0.05;
  std::vector<std::filesystem::path> tables;
  std::optional<std::filesystem::path> cyrillic_table;
  std::optional<std::filesystem::path> inventory;
};

namespace detail {

inline std::string unquote(std::string_view v, std::size_t line) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size()) {
        char e = v[++i];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += v[i];
      }
    }
    return out;
  }
  if (!v.empty() && v.front() == '"') throw ParseError("unterminated string", line);
  return std::string(v);
}

inline std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    std::size_t comma = v.find(',', start);
    if (comma == std::string_view::npos) comma = v.size();
    auto item = io::trim(v.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

// Flat key = value file; '#' starts a comment line, values may be double
// quoted. Relative paths are resolved against `base_dir`.
inline IngestConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {}) {
  IngestConfig cfg;
  auto lines = io::split_lines(text);
  auto resolve = [&](std::string_view p) {
    std::filesystem::path path{std::string(p)};
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto line = io::trim(lines[ln]);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", ln + 1);
    auto key = io::trim(line.substr(0, eq));
    std::string value = detail::unquote(io::trim(line.substr(eq + 1)), ln + 1);
    auto number = [&]() {
      char* end = nullptr;
      double v = std::strtod(value.c_str(), &end);
      if (value.empty() || end != value.c_str() + value.size()) {
        throw ParseError("'" + std::string(key) + "' needs a number", ln + 1);
      }
      return v;
    };
    if (key == "language") {
      cfg.language = value;
    } else if (key == "tier_pattern") {
      cfg.tier_pattern = value;
    } else if (key == "test_pattern") {
      cfg.test_pattern = value;
    } else if (key == "strip_set") {
      cfg.strip_set = unicode::to_u32(value);
    } else if (key == "split_seed") {
      double v = number();
      if (v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
        throw ParseError("split_seed must be a non-negative integer", ln + 1);
      }
      cfg.split_seed = static_cast<std::uint64_t>(v);
    } else if (key == "val_ratio") {
      cfg.val_ratio = number();
      if (!(cfg.val_ratio >= 0.0 && cfg.val_ratio < 1.0)) {
        throw ParseError("val_ratio must lie in [0, 1)", ln + 1);
      }
    } else if (key == "tables") {
      cfg.tables.clear();
      for (auto& p : detail::split_list(value)) cfg.tables.push_back(resolve(p));
    } else if (key == "cyrillic_table") {
      cfg.cyrillic_table = resolve(value);
    } else if (key == "inventory") {
      cfg.inventory = resolve(value);
    } else {
      throw ParseError("unknown key '" + std::string(key) + "'", ln + 1);
    }
  }
  return cfg;
}

inline IngestConfig load_config(const std::filesystem::path& path) {
  return parse_config(io::read_file(path), path.parent_path());
}

}  // namespace phonkit::corpus
