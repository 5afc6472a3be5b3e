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

// Writes the synthetic corpus used by the end-to-end tests:
//
//   inventory.txt        30 phonemes (10 composite) plus <pad>, | and <unk>
//   old_inventory.txt    base symbols and bare diacritics, the "pretrained" vocabulary
//   old_head.wgt1        random d=8 output layer over old_inventory.txt
//   romanized.tsv        š -> ʃ and | -> ˤ
//   cyrillic.tsv         IPA <-> Cyrillic for the manifest's cyrillic field
//   ingest.cfg
//   train_a.TextGrid     long format, romanized spelling
//   train_b.TextGrid     short format, UTF-16LE with BOM
//   test.eaf
//   logits/test_NNNN.ctl1
//
// Phoneme frequencies in the training transcripts follow a Zipf law. The
// logits make phoneme p come out right with probability
// a(p) = 0.95 / (1 + exp(-3 (log10 train_count(p) - 1.2))); errors turn a
// composite into its base and a simple phoneme into a fixed neighbour.
//
// Usage: make_fixtures <out-dir>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "phonkit/core/io.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/decode/logits.hpp"
#include "phonkit/ipa/inventory.hpp"
#include "phonkit/remap/weights.hpp"

namespace fs = std::filesystem;
using phonkit::io::write_file;

namespace {

// Frequency rank order; composites sit in the tail.
const std::vector<std::string> kPhonemes = {
    "a", "ə", "i", "k", "t", "n", "r", "l", "s", "q", "u", "e", "m", "χ", "o",
    "w", "j", "x", "ʃ", "p", "aː", "kʷ", "qʼ", "iː", "tʼ", "qʷ", "kʼ", "uː", "χʷ", "aˤ"};

const std::map<std::string, std::string> kConfusion = {
    {"a", "ə"}, {"ə", "a"}, {"i", "e"}, {"e", "i"}, {"o", "u"}, {"u", "o"}, {"p", "t"},
    {"t", "p"}, {"k", "q"}, {"q", "k"}, {"s", "ʃ"}, {"ʃ", "s"}, {"x", "χ"}, {"χ", "x"},
    {"m", "n"}, {"n", "m"}, {"l", "r"}, {"r", "l"}, {"j", "w"}, {"w", "j"},
    {"aː", "a"}, {"kʷ", "k"}, {"qʼ", "q"}, {"iː", "i"}, {"tʼ", "t"}, {"qʷ", "q"},
    {"kʼ", "k"}, {"uː", "u"}, {"χʷ", "χ"}, {"aˤ", "a"}};

constexpr int kTrainUtterances = 42;
constexpr int kTestUtterances = 20;
constexpr int kLexiconSize = 80;

// mt19937_64 with explicit integer/real mappings, identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 gen_;
};

using Word = std::vector<std::size_t>;  // indices into kPhonemes
using Utterance = std::vector<Word>;

std::string ipa(const Utterance& u) {
  std::string out;
  for (std::size_t w = 0; w < u.size(); ++w) {
    if (w) out += ' ';
    for (std::size_t p : u[w]) out += kPhonemes[p];
  }
  return out;
}

// Spelling used in train_a: romanized ʃ, "|" for pharyngealization, punctuation.
std::string romanized(const Utterance& u) {
  std::string out;
  for (std::size_t w = 0; w < u.size(); ++w) {
    if (w) out += w % 4 == 3 ? ", " : " ";
    for (std::size_t p : u[w]) {
      if (kPhonemes[p] == "ʃ") {
        out += "š";
      } else if (kPhonemes[p] == "aˤ") {
        out += "a|";
      } else {
        out += kPhonemes[p];
      }
    }
  }
  return out + ".";
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Interval {
  double start, end;
  std::string text;
};

std::vector<Interval> lay_out(const std::vector<std::string>& texts, Rng& rng, double& total) {
  std::vector<Interval> out;
  double t = 0.0;
  for (const auto& text : texts) {
    double len = 1.5 + 0.25 * static_cast<double>(phonkit::unicode::code_point_count(text)) / 4.0 +
                 0.5 * rng.uniform();
    len = std::round(len * 1000.0) / 1000.0;
    out.push_back({t, t + len, text});
    t += len;
  }
  total = t;
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  return out + "\"";
}

std::string textgrid_long(const std::vector<Interval>& iv, const std::vector<Interval>& notes,
                          double total) {
  std::string s = "File type = \"ooTextFile\"\nObject class = \"TextGrid\"\n\n";
  s += "xmin = 0 \nxmax = " + fmt(total) + " \ntiers? <exists> \nsize = 3 \nitem []: \n";
  auto tier = [&](int n, const char* name, const std::vector<Interval>& xs) {
    s += "    item [" + std::to_string(n) + "]:\n        class = \"IntervalTier\" \n";
    s += std::string("        name = \"") + name + "\" \n        xmin = 0 \n        xmax = " + fmt(total) +
         " \n        intervals: size = " + std::to_string(xs.size()) + " \n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      s += "        intervals [" + std::to_string(i + 1) + "]:\n            xmin = " + fmt(xs[i].start) +
           " \n            xmax = " + fmt(xs[i].end) + " \n            text = " + quote(xs[i].text) +
           " \n";
    }
  };
  tier(1, "transcript", iv);
  tier(2, "notes", notes);
  s += "    item [3]:\n        class = \"TextTier\" \n        name = \"events\" \n        xmin = 0 \n"
       "        xmax = " + fmt(total) + " \n        points: size = 1 \n        points [1]:\n"
       "            number = 0.5 \n            mark = \"click\" \n";
  return s;
}

std::string textgrid_short(const std::vector<Interval>& iv, double total) {
  std::string s = "File type = \"ooTextFile\"\nObject class = \"TextGrid\"\n\n0\n" + fmt(total) +
                  "\n<exists>\n1\n\"IntervalTier\"\n\"transcript\"\n0\n" + fmt(total) + "\n" +
                  std::to_string(iv.size()) + "\n";
  for (const auto& x : iv) s += fmt(x.start) + "\n" + fmt(x.end) + "\n" + quote(x.text) + "\n";
  return s;
}

std::string utf16le_with_bom(const std::string& utf8) {
  std::string out = "\xFF\xFE";
  for (char32_t c : phonkit::unicode::to_u32(utf8)) {
    auto unit = [&](std::uint16_t u) {
      out += static_cast<char>(u & 0xFF);
      out += static_cast<char>(u >> 8);
    };
    if (c >= 0x10000) {
      c -= 0x10000;
      unit(static_cast<std::uint16_t>(0xD800 + (c >> 10)));
      unit(static_cast<std::uint16_t>(0xDC00 + (c & 0x3FF)));
    } else {
      unit(static_cast<std::uint16_t>(c));
    }
  }
  return out;
}

std::string eaf(const std::vector<Interval>& iv) {
  std::string s =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<ANNOTATION_DOCUMENT AUTHOR=\"\" DATE=\"2024-01-01T00:00:00+00:00\" FORMAT=\"3.0\" VERSION=\"3.0\">\n"
      "  <HEADER MEDIA_FILE=\"\" TIME_UNITS=\"milliseconds\"/>\n  <TIME_ORDER>\n";
  for (std::size_t i = 0; i < iv.size(); ++i) {
    for (int k = 0; k < 2; ++k) {
      double t = k ? iv[i].end : iv[i].start;
      s += "    <TIME_SLOT TIME_SLOT_ID=\"ts" + std::to_string(2 * i + k + 1) + "\" TIME_VALUE=\"" +
           std::to_string(std::llround(t * 1000.0)) + "\"/>\n";
    }
  }
  s += "  </TIME_ORDER>\n  <TIER LINGUISTIC_TYPE_REF=\"default-lt\" TIER_ID=\"transcript\">\n";
  for (std::size_t i = 0; i < iv.size(); ++i) {
    s += "    <ANNOTATION>\n      <ALIGNABLE_ANNOTATION ANNOTATION_ID=\"a" + std::to_string(i + 1) +
         "\" TIME_SLOT_REF1=\"ts" + std::to_string(2 * i + 1) + "\" TIME_SLOT_REF2=\"ts" +
         std::to_string(2 * i + 2) + "\">\n        <ANNOTATION_VALUE>" + iv[i].text +
         "</ANNOTATION_VALUE>\n      </ALIGNABLE_ANNOTATION>\n    </ANNOTATION>\n";
  }
  s += "  </TIER>\n  <TIER LINGUISTIC_TYPE_REF=\"default-lt\" TIER_ID=\"notes\">\n"
       "    <ANNOTATION>\n      <ALIGNABLE_ANNOTATION ANNOTATION_ID=\"n1\" TIME_SLOT_REF1=\"ts1\" "
       "TIME_SLOT_REF2=\"ts2\">\n        <ANNOTATION_VALUE>speaker A</ANNOTATION_VALUE>\n"
       "      </ALIGNABLE_ANNOTATION>\n    </ANNOTATION>\n  </TIER>\n"
       "  <LINGUISTIC_TYPE GRAPHIC_REFERENCES=\"false\" LINGUISTIC_TYPE_ID=\"default-lt\" "
       "TIME_ALIGNABLE=\"true\"/>\n</ANNOTATION_DOCUMENT>\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <out-dir>\n";
    return 1;
  }
  const fs::path dir = argv[1];
  fs::create_directories(dir / "logits");
  Rng rng(20240607);
  const std::size_t P = kPhonemes.size();

  std::string inv_text = "# Synthetic 30-phoneme inventory.\n!lang synthetic\n!blank <pad>\n!sep |\n!unk <unk>\n";
  for (const auto& p : kPhonemes) inv_text += p + "\n";
  write_file(dir / "inventory.txt", inv_text);
  auto inv = phonkit::ipa::PhonemeInventory::parse(inv_text);

  std::string old_text = "# Pretrained output vocabulary: bases and bare marks.\n!blank <pad>\n!sep |\n!unk <unk>\n";
  for (const auto& p : kPhonemes) {
    if (!inv.phoneme(*inv.index_of(p)).is_composite()) old_text += p + "\n";
  }
  for (const char* d : {"ʷ", "ʼ", "ː", "ˤ"}) old_text += std::string(d) + "\n";
  write_file(dir / "old_inventory.txt", old_text);
  phonkit::remap::WeightBundle head;
  head.vocab = phonkit::ipa::PhonemeInventory::parse(old_text);
  head.d = 8;
  for (std::size_t i = 0; i < head.d * head.vocab.size(); ++i) {
    head.W.push_back(static_cast<float>(2.0 * rng.uniform() - 1.0));
  }
  for (std::size_t i = 0; i < head.vocab.size(); ++i) head.b.push_back(static_cast<float>(rng.uniform() - 0.5));
  phonkit::remap::save_wgt1(head, dir / "old_head.wgt1");

  write_file(dir / "romanized.tsv", "cyrillic\tipa\tpreferred\nš\tʃ\t1\n|\tˤ\t1\n");
  write_file(dir / "cyrillic.tsv",
             "cyrillic\tipa\tpreferred\nа\ta\t1\nаь\tə\t1\nи\ti\t1\nк\tk\t1\nт\tt\t1\nн\tn\t1\n"
             "р\tr\t1\nл\tl\t1\nс\ts\t1\nкъ\tq\t1\nу\tu\t1\nе\te\t1\nм\tm\t1\nхъ\tχ\t1\nо\to\t1\n"
             "в\tw\t1\nй\tj\t1\nх\tx\t1\nш\tʃ\t1\nп\tp\t1\nаа\taː\t1\nкӀв\tkʷ\t0\nкв\tkʷ\t1\n"
             "къӀ\tqʼ\t1\nии\tiː\t1\nтӀ\ttʼ\t1\nкъв\tqʷ\t1\nкӀ\tkʼ\t1\nуу\tuː\t1\nхъв\tχʷ\t1\n"
             "аӀ\taˤ\t1\n");
  write_file(dir / "ingest.cfg",
             "# Ingest settings for the synthetic corpus.\nlanguage = synthetic\n"
             "tier_pattern = transcript\ntables = romanized.tsv\ncyrillic_table = cyrillic.tsv\n"
             "inventory = inventory.txt\nsplit_seed = 13\nval_ratio = 0.05\n");

  std::vector<double> zipf(P);
  double zsum = 0.0;
  for (std::size_t r = 0; r < P; ++r) zsum += zipf[r] = 1.0 / std::pow(static_cast<double>(r + 1), 1.5);
  auto draw = [&] {
    double u = rng.uniform() * zsum;
    for (std::size_t r = 0; r < P; ++r) {
      if ((u -= zipf[r]) < 0) return r;
    }
    return P - 1;
  };

  std::vector<Word> lexicon;
  for (int i = 0; i < kLexiconSize; ++i) {
    Word w(2 + rng.below(4));
    for (auto& p : w) p = draw();
    lexicon.push_back(w);
  }
  std::vector<Utterance> train;
  for (int u = 0; u < kTrainUtterances; ++u) {
    Utterance utt(3 + rng.below(5));
    for (auto& w : utt) w = lexicon[rng.below(lexicon.size())];
    train.push_back(utt);
  }
  std::vector<std::size_t> train_count(P, 0);
  for (const auto& u : train) {
    for (const auto& w : u) {
      for (std::size_t p : w) ++train_count[p];
    }
  }
  for (std::size_t p = 0; p < P; ++p) {
    if (train_count[p] == 0) {
      train.back().push_back({p, 0});
      ++train_count[p];
      ++train_count[0];
    }
  }

  // Test utterances cycle through a shuffled phoneme list so every phoneme
  // gets similar test support.
  std::vector<std::size_t> cycle;
  for (int rep = 0; rep < 13; ++rep) {
    std::vector<std::size_t> order(P);
    for (std::size_t p = 0; p < P; ++p) order[p] = p;
    for (std::size_t i = P; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    cycle.insert(cycle.end(), order.begin(), order.end());
  }
  std::vector<Utterance> test;
  std::size_t next = 0;
  for (int u = 0; u < kTestUtterances; ++u) {
    Utterance utt(4);
    for (auto& w : utt) {
      w.resize(4 + (u + w.size()) % 2);
      for (auto& p : w) p = cycle[next++ % cycle.size()];
    }
    test.push_back(utt);
  }

  std::vector<double> accuracy(P);
  for (std::size_t p = 0; p < P; ++p) {
    double x = std::log10(static_cast<double>(train_count[p]));
    accuracy[p] = 0.95 / (1.0 + std::exp(-3.0 * (x - 1.2)));
  }
  std::vector<std::size_t> seen(P, 0);
  const std::size_t V = inv.size();
  const float hit = static_cast<float>(std::log(0.9));
  const float miss = static_cast<float>(std::log(0.1 / static_cast<double>(V - 1)));
  for (std::size_t u = 0; u < test.size(); ++u) {
    std::vector<std::size_t> labels;
    for (std::size_t w = 0; w < test[u].size(); ++w) {
      if (w) labels.push_back(inv.separator_index());
      for (std::size_t p : test[u][w]) {
        std::size_t j = seen[p]++;
        bool right = std::floor(static_cast<double>(j + 1) * accuracy[p]) >
                     std::floor(static_cast<double>(j) * accuracy[p]);
        const std::string& out = right ? kPhonemes[p] : kConfusion.at(kPhonemes[p]);
        labels.push_back(*inv.index_of(out));
      }
    }
    phonkit::decode::LogitMatrix m(2 * labels.size(), V);
    for (std::size_t k = 0; k < labels.size(); ++k) {
      for (std::size_t v = 0; v < V; ++v) {
        m(2 * k, v) = v == labels[k] ? hit : miss;
        m(2 * k + 1, v) = v == inv.blank_index() ? hit : miss;
      }
    }
    char name[32];
    std::snprintf(name, sizeof name, "test_%04zu.ctl1", u);
    phonkit::decode::save_ctl1(m, dir / "logits" / name);
  }

  std::vector<std::string> a_texts, b_texts, test_texts;
  const std::size_t half = train.size() / 2;
  for (std::size_t u = 0; u < train.size(); ++u) {
    (u < half ? a_texts : b_texts).push_back(u < half ? romanized(train[u]) : ipa(train[u]));
  }
  a_texts.insert(a_texts.begin() + 3, "");
  b_texts.insert(b_texts.begin() + 5, "ka@ta");
  for (const auto& u : test) test_texts.push_back(ipa(u) + ".");

  double total_a = 0, total_b = 0, total_t = 0;
  auto iv_a = lay_out(a_texts, rng, total_a);
  auto iv_b = lay_out(b_texts, rng, total_b);
  auto iv_t = lay_out(test_texts, rng, total_t);
  std::vector<Interval> notes{{0.0, total_a / 2, "speaker A"}, {total_a / 2, total_a, "speaker B"}};
  write_file(dir / "train_a.TextGrid", textgrid_long(iv_a, notes, total_a));
  write_file(dir / "train_b.TextGrid", utf16le_with_bom(textgrid_short(iv_b, total_b)));
  write_file(dir / "test.eaf", eaf(iv_t));

  std::cout << "wrote " << train.size() << " train and " << test.size() << " test utterances to "
            << dir.string() << '\n';
  return 0;
}
