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
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/corpus/normalize.hpp"
#include "phonkit/corpus/textgrid.hpp"
#include "phonkit/ipa/inventory.hpp"
#include "phonkit/ipa/segment.hpp"
#include "phonkit/ipa/transliterate.hpp"

namespace phonkit::corpus {

enum class Split { train, val, test };

inline const char* split_name(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "?";
}

inline std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "val") return Split::val;
  if (s == "test") return Split::test;
  return std::nullopt;
}

struct UtteranceRecord {
  std::string id;
  std::string ipa;
  std::optional<std::string> cyrillic;
  Split split = Split::train;
  double duration_s = 0.0;
  std::string source_file;
  std::optional<std::string> logits_path;

  friend bool operator==(const UtteranceRecord&, const UtteranceRecord&) = default;
};

inline nlohmann::ordered_json to_json(const UtteranceRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["ipa"] = r.ipa;
  j["cyrillic"] = r.cyrillic ? nlohmann::ordered_json(*r.cyrillic) : nlohmann::ordered_json(nullptr);
  j["split"] = split_name(r.split);
  j["duration_s"] = r.duration_s;
  j["source_file"] = r.source_file;
  j["logits_path"] = r.logits_path ? nlohmann::ordered_json(*r.logits_path) : nlohmann::ordered_json(nullptr);
  return j;
}

inline UtteranceRecord record_from_json(const nlohmann::json& j, std::size_t line) {
  try {
    UtteranceRecord r;
    r.id = j.at("id").get<std::string>();
    r.ipa = j.at("ipa").get<std::string>();
    if (j.contains("cyrillic") && !j["cyrillic"].is_null()) r.cyrillic = j["cyrillic"].get<std::string>();
    auto split = parse_split(j.at("split").get<std::string>());
    if (!split) throw ParseError("unknown split '" + j["split"].get<std::string>() + "'", line);
    r.split = *split;
    r.duration_s = j.at("duration_s").get<double>();
    r.source_file = j.value("source_file", "");
    if (j.contains("logits_path") && !j["logits_path"].is_null()) {
      r.logits_path = j["logits_path"].get<std::string>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest record: ") + e.what(), line);
  }
}

inline std::string write_jsonl(const std::vector<UtteranceRecord>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
    out += '\n';
  }
  return out;
}

inline std::vector<UtteranceRecord> parse_jsonl(std::string_view text) {
  std::vector<UtteranceRecord> out;
  auto lines = io::split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (io::trim(lines[ln]).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[ln]);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("manifest: ") + e.what(), ln + 1);
    }
    out.push_back(record_from_json(j, ln + 1));
  }
  return out;
}

inline void save_manifest(const std::vector<UtteranceRecord>& records,
                          const std::filesystem::path& path) {
  io::write_file(path, write_jsonl(records));
}

inline std::vector<UtteranceRecord> load_manifest(const std::filesystem::path& path) {
  return parse_jsonl(io::read_file(path));
}

// Annotation file with the split its utterances belong to (train or test).
struct SourceFile {
  std::string path;
  Split split = Split::train;
  Annotations annotations;
};

struct Reject {
  std::string source_file;
  std::size_t interval = 0;
  std::string id;
  std::string reason;
  std::string text;
};

struct ManifestOptions {
  NormalizeRules rules;
  std::string tier_pattern = ".*";
  const ipa::PhonemeInventory* inventory = nullptr;  // segmentability check
  const ipa::TransliterationTable* cyrillic = nullptr;
  std::uint64_t seed = 13;
  double val_ratio = 0.05;
  std::optional<std::filesystem::path> logits_dir;
};

struct Manifest {
  std::vector<UtteranceRecord> records;
  std::vector<Reject> rejects;
};

namespace detail {

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

}  // namespace detail

// Fisher-Yates shuffle of the train records with mt19937_64(seed); every
// round(1/val_ratio)-th position of the shuffled order becomes validation.
inline void assign_validation(std::vector<UtteranceRecord>& records, std::uint64_t seed,
                              double val_ratio) {
  if (val_ratio <= 0.0) return;
  std::vector<std::size_t> train;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].split == Split::train) train.push_back(i);
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = train.size(); i > 1; --i) {
    std::swap(train[i - 1], train[detail::bounded(rng, i)]);
  }
  const std::size_t every = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / val_ratio)));
  for (std::size_t k = 0; k < train.size(); ++k) {
    if ((k + 1) % every == 0) records[train[k]].split = Split::val;
  }
}

inline std::string utterance_id(const std::string& source, std::size_t index) {
  std::ostringstream id;
  id << std::filesystem::path(source).stem().string() << '_' << std::setw(4) << std::setfill('0')
     << index;
  return id.str();
}

// One record per usable interval of a matching tier. Ids are
// <file stem>_<NNNN>, NNNN counting the matching intervals of the file.
// Intervals that are empty after normalization or fail segmentation go to
// the rejects list.
inline Manifest build_manifest(const std::vector<SourceFile>& sources, const ManifestOptions& opt) {
  std::regex tier(opt.tier_pattern, std::regex::ECMAScript);
  Manifest m;
  std::set<std::string> seen;
  for (const auto& src : sources) {
    std::size_t index = 0;
    for (const auto& iv : src.annotations.intervals) {
      if (!std::regex_match(iv.tier_name, tier)) continue;
      std::string id = utterance_id(src.path, index++);
      if (!seen.insert(id).second) throw Error("duplicate utterance id '" + id + "'");
      std::string ipa = normalize(iv.text, opt.rules);
      auto reject = [&](std::string reason) {
        m.rejects.push_back({src.path, index - 1, id, std::move(reason), iv.text});
      };
      if (ipa.empty()) {
        reject("empty");
        continue;
      }
      if (opt.inventory) {
        try {
          ipa::segment(ipa, *opt.inventory);
        } catch (const SegmentationError& e) {
          reject("residual character '" + e.grapheme() + "' at byte " +
                 std::to_string(e.byte_offset()));
          continue;
        }
      }
      UtteranceRecord r;
      r.id = id;
      r.ipa = ipa;
      if (opt.cyrillic) r.cyrillic = opt.cyrillic->apply(ipa, ipa::Direction::ipa_to_cyr);
      r.split = src.split;
      r.duration_s = iv.t_end - iv.t_start;
      r.source_file = src.path;
      if (opt.logits_dir) {
        auto p = *opt.logits_dir / (id + ".ctl1");
        if (std::filesystem::exists(p)) r.logits_path = p.string();
      }
      m.records.push_back(std::move(r));
    }
  }
  if (m.records.empty()) throw EmptyCorpus("no usable intervals in the annotation files");
  assign_validation(m.records, opt.seed, opt.val_ratio);
  return m;
}

inline std::string rejects_tsv(const std::vector<Reject>& rejects) {
  std::string out = "source_file\tinterval\tid\treason\ttext\n";
  auto clean = [](std::string s) {
    std::replace(s.begin(), s.end(), '\t', ' ');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
  };
  for (const auto& r : rejects) {
    out += clean(r.source_file) + '\t' + std::to_string(r.interval) + '\t' + r.id + '\t' +
           clean(r.reason) + '\t' + clean(r.text) + '\n';
  }
  return out;
}

}  // namespace phonkit::corpus
