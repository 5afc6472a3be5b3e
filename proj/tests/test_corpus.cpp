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

#include <gtest/gtest.h>

#include "phonkit/core/unicode.hpp"
#include "phonkit/corpus/config.hpp"
#include "phonkit/corpus/eaf.hpp"
#include "phonkit/corpus/manifest.hpp"
#include "phonkit/corpus/normalize.hpp"
#include "phonkit/corpus/summary.hpp"
#include "phonkit/corpus/textgrid.hpp"

namespace phonkit::corpus {
namespace {

const std::string kFixtures = PHONKIT_FIXTURES;

const char* kLongTextGrid = R"(File type = "ooTextFile"
Object class = "TextGrid"

xmin = 0
xmax = 2.5
tiers? <exists>
size = 2
item []:
    item [1]:
        class = "IntervalTier"
        name = "transcript"
        xmin = 0
        xmax = 2.5
        intervals: size = 2
        intervals [1]:
            xmin = 0
            xmax = 1.25
            text = "kʷa ""qʼa"""
        intervals [2]:
            xmin = 1.25
            xmax = 2.5
            text = ""
    item [2]:
        class = "TextTier"
        name = "events"
        xmin = 0
        xmax = 2.5
        points: size = 1
        points [1]:
            number = 0.5
            mark = "x"
)";

const char* kShortTextGrid = R"(File type = "ooTextFile"
Object class = "TextGrid"

0
2.5
<exists>
2
"IntervalTier"
"transcript"
0
2.5
2
0
1.25
"kʷa ""qʼa"""
1.25
2.5
""
"TextTier"
"events"
0
2.5
1
0.5
"x"
)";

std::string utf16le(std::string_view utf8) {
  std::string out = "\xFF\xFE";
  for (char32_t c : unicode::to_u32(utf8)) {
    auto unit = [&](char16_t u) {
      out += static_cast<char>(u & 0xFF);
      out += static_cast<char>(u >> 8);
    };
    if (c >= 0x10000) {
      c -= 0x10000;
      unit(static_cast<char16_t>(0xD800 + (c >> 10)));
      unit(static_cast<char16_t>(0xDC00 + (c & 0x3FF)));
    } else {
      unit(static_cast<char16_t>(c));
    }
  }
  return out;
}

std::string eaf(const std::string& slots, const std::string& annotations) {
  return R"(<?xml version="1.0" encoding="UTF-8"?>
<ANNOTATION_DOCUMENT><TIME_ORDER>)" +
         slots + R"(</TIME_ORDER><TIER TIER_ID="transcript">)" + annotations +
         "</TIER></ANNOTATION_DOCUMENT>\n";
}

std::string slot(const char* id, const char* ms) {
  return std::string("<TIME_SLOT TIME_SLOT_ID=\"") + id + "\" TIME_VALUE=\"" + ms + "\"/>";
}

std::string annotation(const char* id, const char* r1, const char* r2, const char* text) {
  return std::string("<ANNOTATION><ALIGNABLE_ANNOTATION ANNOTATION_ID=\"") + id +
         "\" TIME_SLOT_REF1=\"" + r1 + "\" TIME_SLOT_REF2=\"" + r2 + "\"><ANNOTATION_VALUE>" +
         text + "</ANNOTATION_VALUE></ALIGNABLE_ANNOTATION></ANNOTATION>";
}

bool same(const Annotations& a, const Annotations& b) {
  if (a.intervals.size() != b.intervals.size()) return false;
  for (std::size_t i = 0; i < a.intervals.size(); ++i) {
    const auto &x = a.intervals[i], &y = b.intervals[i];
    if (x.tier_name != y.tier_name || x.t_start != y.t_start || x.t_end != y.t_end ||
        x.text != y.text) {
      return false;
    }
  }
  return true;
}

UtteranceRecord record(std::string id, std::string ipa, Split split, double seconds = 1.0) {
  UtteranceRecord r;
  r.id = std::move(id);
  r.ipa = std::move(ipa);
  r.split = split;
  r.duration_s = seconds;
  r.source_file = "x.TextGrid";
  return r;
}

TEST(TextGrid, LongFormat) {
  auto a = parse_textgrid_text(kLongTextGrid);
  ASSERT_EQ(a.intervals.size(), 2u);
  EXPECT_EQ(a.intervals[0].tier_name, "transcript");
  EXPECT_EQ(a.intervals[0].text, "kʷa \"qʼa\"");
  EXPECT_DOUBLE_EQ(a.intervals[0].t_end, 1.25);
  EXPECT_EQ(a.intervals[1].text, "");
  ASSERT_EQ(a.warnings.size(), 1u);
  EXPECT_NE(a.warnings[0].find("events"), std::string::npos);
}

TEST(TextGrid, ShortAndUtf16FormsParseIdentically) {
  auto expected = parse_textgrid_text(kLongTextGrid);
  EXPECT_TRUE(same(parse_textgrid_text(kShortTextGrid), expected));
  EXPECT_TRUE(same(parse_textgrid_text(utf16le(kLongTextGrid)), expected));
  EXPECT_TRUE(same(parse_textgrid_text(std::string("\xEF\xBB\xBF") + kShortTextGrid), expected));
}

TEST(TextGrid, TruncatedFileIsParseError) {
  std::string text = kShortTextGrid;
  EXPECT_THROW(parse_textgrid_text(text.substr(0, text.size() / 2)), ParseError);
  EXPECT_THROW(parse_textgrid_text("File type = \"ooTextFile\"\n"), ParseError);
}

TEST(TextGrid, OverlappingIntervalsRejected) {
  std::string text = kShortTextGrid;
  text.replace(text.find("1.25\n2.5\n\"\""), 4, "1.00");
  EXPECT_THROW(parse_textgrid_text(text), ParseError);
}

TEST(Eaf, MillisecondSlotsBecomeSeconds) {
  auto a = parse_eaf_text(eaf(slot("ts1", "0") + slot("ts2", "1500") + slot("ts3", "2250"),
                              annotation("a1", "ts1", "ts2", "kʷa") +
                                  annotation("a2", "ts2", "ts3", "")));
  ASSERT_EQ(a.intervals.size(), 2u);
  EXPECT_EQ(a.intervals[0].t_start, 0.0);
  EXPECT_EQ(a.intervals[0].t_end, 1.5);
  EXPECT_EQ(a.intervals[0].text, "kʷa");
  EXPECT_EQ(a.intervals[1].text, "");
  EXPECT_EQ(a.intervals[1].t_end, 2.25);
}

TEST(Eaf, MissingSlotIsParseError) {
  EXPECT_THROW(parse_eaf_text(eaf(slot("ts1", "0"), annotation("a1", "ts1", "ts9", "ka"))),
               ParseError);
  EXPECT_THROW(parse_eaf_text(eaf(slot("ts1", "x"), "")), ParseError);
  EXPECT_THROW(parse_eaf_text("<ANNOTATION_DOCUMENT>"), ParseError);
}

TEST(Normalize, TablesThenStripping) {
  NormalizeRules rules;
  rules.tables.push_back(ipa::TransliterationTable::load(kFixtures + "/synthetic/romanized.tsv"));
  EXPECT_EQ(normalize("šab", rules), "ʃab");
  EXPECT_EQ(normalize("qa|", rules), "qaˤ");
  EXPECT_EQ(normalize("  kʷa,   ʃab. ", rules), "kʷa ʃab");
  EXPECT_EQ(normalize("kʷaqʼː", rules), "kʷaqʼː");
  for (const char* s : {"šab | ka", "ka-ta, (qʼa)", "áb"}) {
    auto once = normalize(s, rules);
    EXPECT_EQ(normalize(once, rules), once);
  }
}

TEST(Manifest, ValidationHoldoutIsOneInTwenty) {
  std::vector<UtteranceRecord> records;
  for (int i = 0; i < 100; ++i) records.push_back(record("r" + std::to_string(i), "ka", Split::train));
  records.push_back(record("t", "ka", Split::test));
  auto a = records;
  assign_validation(a, 13, 0.05);
  std::size_t val = 0;
  for (const auto& r : a) val += r.split == Split::val;
  EXPECT_EQ(val, 5u);
  EXPECT_EQ(a.back().split, Split::test);
  auto b = records;
  assign_validation(b, 13, 0.05);
  EXPECT_EQ(a, b);
  auto c = records;
  assign_validation(c, 14, 0.05);
  EXPECT_NE(a, c);
}

TEST(Manifest, JsonlRoundTrip) {
  std::vector<UtteranceRecord> records{record("a_0000", "kʷa \"qʼa\"", Split::train, 1.25),
                                       record("a_0001", "ʃab", Split::val, 0.5),
                                       record("b_0000", "ka", Split::test, 2.0)};
  records[0].cyrillic = "куа";
  records[2].logits_path = "logits/b_0000.ctl1";
  auto text = write_jsonl(records);
  EXPECT_EQ(parse_jsonl(text), records);
  EXPECT_EQ(write_jsonl(parse_jsonl(text)), text);
  EXPECT_THROW(parse_jsonl("{\"id\": 1}\n"), ParseError);
}

TEST(Manifest, BuildRejectsEmptyAndUnsegmentable) {
  auto inv = ipa::PhonemeInventory::parse("!blank <b>\n!sep |\na\nk\nkʷ\n");
  SourceFile src;
  src.path = "dir/rec.TextGrid";
  src.annotations.intervals = {{"transcript", 0.0, 1.0, "kʷa"},
                               {"notes", 1.0, 2.0, "ignored"},
                               {"transcript", 1.0, 1.5, " ... "},
                               {"transcript", 1.5, 2.5, "ka@"}};
  ManifestOptions opt;
  opt.tier_pattern = "transcript";
  opt.inventory = &inv;
  opt.val_ratio = 0.0;
  auto m = build_manifest({src}, opt);
  ASSERT_EQ(m.records.size(), 1u);
  EXPECT_EQ(m.records[0].id, "rec_0000");
  EXPECT_DOUBLE_EQ(m.records[0].duration_s, 1.0);
  ASSERT_EQ(m.rejects.size(), 2u);
  EXPECT_EQ(m.rejects[0].reason, "empty");
  EXPECT_EQ(m.rejects[1].id, "rec_0002");
  EXPECT_EQ(m.rejects[1].reason, "residual character '@' at byte 2");
}

TEST(Summary, ArchiShapedCorpus) {
  auto archi = ipa::PhonemeInventory::load(kFixtures + "/archi_inventory.txt");
  std::vector<UtteranceRecord> records;
  auto regular = archi.regular_indices();
  for (std::size_t k = 0; k < regular.size(); k += 5) {
    std::string line;
    for (std::size_t j = k; j < std::min(k + 5, regular.size()); ++j) {
      if (j > k) line += ' ';
      line += archi.surface(regular[j]) + "a";
    }
    records.push_back(record("s" + std::to_string(k), line, k % 2 ? Split::val : Split::train, 30.0));
  }
  records.push_back(record("t", "ka", Split::test, 60.0));
  auto s = summarize(records, archi);
  EXPECT_EQ(s.train.unique_phonemes, 85u);
  EXPECT_EQ(s.train.composites, 50u);
  EXPECT_EQ(std::lround(s.train.composite_percent()), 59);
  EXPECT_EQ(s.test.unique_phonemes, 2u);
  EXPECT_EQ(s.test.composites, 0u);
  auto table = format_summary(s, "Archi");
  EXPECT_NE(table.find("(59%)"), std::string::npos);
  EXPECT_NE(table.find(" / 9m"), std::string::npos);
}

TEST(Config, ParsesKeysAndResolvesPaths) {
  auto cfg = parse_config(
      "# comment\nlanguage = archi\ntier_pattern = \"tx|ipa\"\ntables = a.tsv, b.tsv\n"
      "val_ratio = 0.1\nsplit_seed = 7\ninventory = /abs/inv.txt\n",
      "/base");
  EXPECT_EQ(cfg.language, "archi");
  EXPECT_EQ(cfg.tier_pattern, "tx|ipa");
  ASSERT_EQ(cfg.tables.size(), 2u);
  EXPECT_EQ(cfg.tables[1], std::filesystem::path("/base/b.tsv"));
  EXPECT_EQ(*cfg.inventory, std::filesystem::path("/abs/inv.txt"));
  EXPECT_DOUBLE_EQ(cfg.val_ratio, 0.1);
  EXPECT_EQ(cfg.split_seed, 7u);
}

TEST(Config, ErrorsCarryLineNumbers) {
  for (const char* bad : {"language = x\nnope\n", "language = x\ncolour = red\n",
                          "language = x\nval_ratio = 1.5\n", "language = x\nsplit_seed = -1\n"}) {
    try {
      parse_config(bad);
      FAIL() << bad;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u) << bad;
    }
  }
}

}  // namespace
}  // namespace phonkit::corpus
