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

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/corpus/textgrid.hpp"

namespace phonkit::corpus {

// ELAN EAF: TIME_SLOT values are integer milliseconds; each
// ALIGNABLE_ANNOTATION of a TIER becomes one interval. Reference
// annotations (symbolic subdivisions) carry no times and are skipped.
inline Annotations parse_eaf_text(const std::string& xml, const std::string& source = "EAF") {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(source + ": " + e.message(), e.line());
  }
  auto root = doc.get_child_optional("ANNOTATION_DOCUMENT");
  if (!root) throw ParseError(source + ": missing ANNOTATION_DOCUMENT");

  std::map<std::string, std::optional<std::int64_t>> slots;
  if (auto order = root->get_child_optional("TIME_ORDER")) {
    for (const auto& [tag, slot] : *order) {
      if (tag != "TIME_SLOT") continue;
      auto id = slot.get<std::string>("<xmlattr>.TIME_SLOT_ID", "");
      if (id.empty()) throw ParseError(source + ": TIME_SLOT without TIME_SLOT_ID");
      auto value = slot.get_optional<std::string>("<xmlattr>.TIME_VALUE");
      if (!value) {
        slots[id] = std::nullopt;
        continue;
      }
      std::int64_t ms = 0;
      auto [end, ec] = std::from_chars(value->data(), value->data() + value->size(), ms);
      if (ec != std::errc{} || end != value->data() + value->size() || ms < 0) {
        throw ParseError(source + ": time slot '" + id + "' has bad TIME_VALUE '" + *value + "'");
      }
      slots[id] = ms;
    }
  }
  auto resolve = [&](const std::string& ref, const std::string& ann) -> double {
    auto it = slots.find(ref);
    if (it == slots.end()) {
      throw ParseError(source + ": annotation " + ann + " references missing time slot '" + ref + "'");
    }
    if (!it->second) {
      throw ParseError(source + ": annotation " + ann + " references unaligned time slot '" + ref + "'");
    }
    return static_cast<double>(*it->second) / 1000.0;
  };

  Annotations out;
  for (const auto& [tag, tier] : *root) {
    if (tag != "TIER") continue;
    auto tier_id = tier.get<std::string>("<xmlattr>.TIER_ID", "");
    std::size_t first = out.intervals.size();
    std::size_t refs = 0;
    for (const auto& [atag, ann] : tier) {
      if (atag != "ANNOTATION") continue;
      if (auto a = ann.get_child_optional("ALIGNABLE_ANNOTATION")) {
        auto id = a->get<std::string>("<xmlattr>.ANNOTATION_ID", "?");
        auto r1 = a->get<std::string>("<xmlattr>.TIME_SLOT_REF1", "");
        auto r2 = a->get<std::string>("<xmlattr>.TIME_SLOT_REF2", "");
        AnnotationInterval iv;
        iv.tier_name = tier_id;
        iv.t_start = resolve(r1, id);
        iv.t_end = resolve(r2, id);
        iv.text = a->get<std::string>("ANNOTATION_VALUE", "");
        out.intervals.push_back(std::move(iv));
      } else if (ann.get_child_optional("REF_ANNOTATION")) {
        ++refs;
      }
    }
    check_tier_order(out.intervals, first, source);
    if (refs) {
      out.warnings.push_back(source + ": skipped " + std::to_string(refs) +
                             " reference annotations in tier '" + tier_id + "'");
    }
  }
  return out;
}

inline Annotations parse_eaf(const std::filesystem::path& path) {
  return parse_eaf_text(io::read_file(path), path.string());
}

}  // namespace phonkit::corpus
