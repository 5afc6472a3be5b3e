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

#include <cstring>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "phonkit/ipa/segment.hpp"
#include "phonkit/remap/vocab.hpp"
#include "phonkit/remap/weights.hpp"

namespace phonkit::remap {
namespace {

using boost::multiprecision::cpp_rational;

const std::string kFixtures = PHONKIT_FIXTURES;

ipa::PhonemeInventory make(std::vector<std::string> regular) {
  ipa::PhonemeInventory::Definition def;
  def.surfaces = {"<pad>", "|"};
  def.surfaces.insert(def.surfaces.end(), regular.begin(), regular.end());
  return ipa::PhonemeInventory(def);
}

WeightBundle random_bundle(std::mt19937_64& rng, std::size_t d, const ipa::PhonemeInventory& vocab) {
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  WeightBundle w;
  w.d = d;
  w.vocab = vocab;
  w.W.resize(d * vocab.size());
  w.b.resize(vocab.size());
  for (auto& x : w.W) x = u(rng);
  for (auto& x : w.b) x = u(rng);
  return w;
}

// Exact mean of floats, rounded once to the nearest float.
float exact_mean(const std::vector<float>& xs) {
  cpp_rational sum = 0;
  for (float x : xs) sum += cpp_rational(static_cast<double>(x));
  cpp_rational mean = sum / static_cast<int>(xs.size());
  return mean.convert_to<float>();
}

std::vector<std::string> surfaces(const std::vector<std::size_t>& idx, const ipa::PhonemeInventory& inv) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(inv.surface(i));
  return out;
}

TEST(PhonemeTokens, MarksAttachToPrecedingSegment) {
  EXPECT_EQ(phoneme_tokens("kʷa qʼːˤ t͡ʃʼ", ipa::default_diacritics()),
            (std::vector<std::string>{"kʷ", "a", "qʼːˤ", "t͡ʃʼ"}));
}

TEST(BuildVocab, DistinctPhonemesPlusSpecials) {
  auto v = build_vocab({"kʷa", "ka"});
  ASSERT_EQ(v.size(), 8u);
  EXPECT_EQ(v.surface(0), "<pad>");
  EXPECT_EQ(v.blank_index(), 0u);
  EXPECT_EQ(v.surface(v.separator_index()), "|");
  EXPECT_EQ(v.surface(*v.unk_index()), "<unk>");
  // Frequency order: a (2), then k and kʷ (1 each) by byte order.
  EXPECT_EQ(v.surface(5), "a");
  EXPECT_EQ(v.surface(6), "k");
  EXPECT_EQ(v.surface(7), "kʷ");
}

TEST(BuildVocab, EmptyInputGivesSpecialsOnly) {
  auto v = build_vocab({});
  EXPECT_EQ(v.size(), 5u);
  EXPECT_TRUE(v.regular_indices().empty());
}

TEST(BuildVocab, ArchiShapedTranscriptsGiveNinety) {
  auto archi = ipa::PhonemeInventory::load(kFixtures + "/archi_inventory.txt");
  std::vector<std::string> transcripts;
  std::mt19937_64 rng(4);
  auto regular = archi.regular_indices();
  std::string line;
  for (std::size_t k = 0; k < regular.size(); ++k) {
    line += archi.surface(regular[k]);
    if (k % 4 == 3) line += ' ';
    if (k % 12 == 11) {
      transcripts.push_back(line);
      line.clear();
    }
  }
  transcripts.push_back(line);
  auto v = build_vocab(transcripts, {}, "archi");
  EXPECT_EQ(v.regular_indices().size(), 85u);
  EXPECT_EQ(v.size(), 90u);
  // Every word segments back to the same phonemes under the new vocabulary.
  for (const auto& t : transcripts) EXPECT_EQ(ipa::render(ipa::segment(t, v), v), t);
}

TEST(Composition, CompositeSplitsIntoOldSegments) {
  auto old = make({"k", "ʷ", "a", "q", "ʼ", "ː", "ˤ"});
  auto fresh = make({"kʷ", "a", "qʼːˤ"});
  auto map = derive_composition(fresh, old);
  EXPECT_EQ(surfaces(map[2], old), (std::vector<std::string>{"k", "ʷ"}));
  EXPECT_EQ(surfaces(map[3], old), (std::vector<std::string>{"a"}));
  EXPECT_EQ(surfaces(map[4], old), (std::vector<std::string>{"q", "ʼ", "ː", "ˤ"}));
  EXPECT_EQ(map[0], (std::vector<std::size_t>{old.blank_index()}));
  EXPECT_EQ(map[1], (std::vector<std::size_t>{old.separator_index()}));
}

TEST(Composition, PrefersFewestComponents) {
  auto old = make({"q", "ʼ", "ː", "qʼ"});
  auto fresh = make({"qʼː"});
  auto map = derive_composition(fresh, old);
  EXPECT_EQ(surfaces(map[2], old), (std::vector<std::string>{"qʼ", "ː"}));
}

TEST(Composition, UndecomposableReportsSuffix) {
  auto old = make({"k", "a"});
  auto fresh = make({"kʷ"});
  try {
    derive_composition(fresh, old);
    FAIL() << "expected UndecomposablePhoneme";
  } catch (const UndecomposablePhoneme& e) {
    EXPECT_EQ(e.surface(), "kʷ");
    EXPECT_EQ(e.failing_suffix(), "ʷ");
  }
}

TEST(Remap, AverageOfTwoColumns) {
  auto old = make({"k", "ʷ"});
  WeightBundle w;
  w.d = 2;
  w.vocab = old;
  w.W = {0, 0, 0, 0, 1, 3, 3, 5};
  w.b = {0, 0, 0.2f, 0.4f};
  auto fresh = make({"kʷ"});
  auto out = remap(w, derive_composition(fresh, old), fresh, Mode::avg);
  EXPECT_EQ(out.column(2)[0], 2.0f);
  EXPECT_EQ(out.column(2)[1], 4.0f);
  EXPECT_FLOAT_EQ(out.b[2], 0.3f);
  auto first = remap(w, derive_composition(fresh, old), fresh, Mode::cpy1);
  EXPECT_EQ(first.column(2)[0], 1.0f);
  EXPECT_EQ(first.b[2], 0.2f);
}

TEST(Remap, AverageIsExactMean) {
  std::mt19937_64 rng(8);
  auto old = make({"k", "q", "a", "ʷ", "ʼ", "ː", "ˤ"});
  auto fresh = make({"kʷ", "qʼ", "qʼːˤ", "aː", "aːˤ", "k", "a"});
  auto map = derive_composition(fresh, old);
  for (int trial = 0; trial < 20; ++trial) {
    auto w = random_bundle(rng, 1 + rng() % 16, old);
    auto out = remap(w, map, fresh, Mode::avg);
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      for (std::size_t r = 0; r < w.d; ++r) {
        std::vector<float> parts;
        for (std::size_t j : map[i]) parts.push_back(w.column(j)[r]);
        EXPECT_EQ(out.column(i)[r], exact_mean(parts));
      }
      std::vector<float> bias;
      for (std::size_t j : map[i]) bias.push_back(w.b[j]);
      EXPECT_EQ(out.b[i], exact_mean(bias));
    }
  }
}

TEST(Remap, SingletonsAreCopiedInEveryMode) {
  std::mt19937_64 rng(2);
  auto vocab = make({"a", "k", "q"});
  auto w = random_bundle(rng, 6, vocab);
  auto map = derive_composition(vocab, vocab);
  auto avg = remap(w, map, vocab, Mode::avg);
  auto cpy = remap(w, map, vocab, Mode::cpy1);
  EXPECT_EQ(std::memcmp(avg.W.data(), w.W.data(), w.W.size() * 4), 0);
  EXPECT_EQ(std::memcmp(cpy.W.data(), w.W.data(), w.W.size() * 4), 0);
  EXPECT_EQ(avg.b, w.b);
}

TEST(Remap, RandomIsDeterministicPerSeed) {
  std::mt19937_64 rng(3);
  auto old = make({"k", "ʷ"});
  auto fresh = make({"kʷ", "k"});
  auto w = random_bundle(rng, 8, old);
  auto map = derive_composition(fresh, old);
  auto a = remap(w, map, fresh, Mode::random, 42);
  auto b = remap(w, map, fresh, Mode::random, 42);
  auto c = remap(w, map, fresh, Mode::random, 43);
  EXPECT_EQ(encode_wgt1(a), encode_wgt1(b));
  EXPECT_NE(a.W, c.W);
  for (float x : a.b) EXPECT_EQ(x, 0.0f);
  double sum2 = 0;
  for (float x : a.W) sum2 += static_cast<double>(x) * x;
  EXPECT_LT(std::sqrt(sum2 / static_cast<double>(a.W.size())), 0.05);
}

TEST(Remap, RejectsBadInputs) {
  std::mt19937_64 rng(3);
  auto old = make({"k"});
  auto w = random_bundle(rng, 2, old);
  auto fresh = make({"k"});
  CompositionMap bad;
  bad.components = {{0}, {1}, {9}};
  EXPECT_THROW(remap(w, bad, fresh, Mode::avg), IndexOutOfRange);
  auto map = derive_composition(fresh, old);
  w.W[0] = NAN;
  EXPECT_THROW(remap(w, map, fresh, Mode::avg), NonFiniteWeights);
  w.W.pop_back();
  EXPECT_THROW(remap(w, map, fresh, Mode::avg), ShapeError);
}

TEST(Wgt1, RoundTripIsBitwise) {
  std::mt19937_64 rng(6);
  auto w = random_bundle(rng, 5, make({"a", "kʷ", "qʼːˤ"}));
  auto bytes = encode_wgt1(w);
  auto back = decode_wgt1(bytes);
  EXPECT_EQ(encode_wgt1(back), bytes);
  EXPECT_EQ(std::memcmp(back.W.data(), w.W.data(), w.W.size() * 4), 0);
  EXPECT_EQ(back.vocab.surface(4), "qʼːˤ");
  EXPECT_THROW(decode_wgt1(bytes.substr(0, 20)), ParseError);
}

TEST(Wgt1, FixtureLoads) {
  auto w = load_wgt1(kFixtures + "/synthetic/old_head.wgt1");
  EXPECT_EQ(w.d, 8u);
  EXPECT_EQ(w.columns(), w.vocab.size());
}

}  // namespace
}  // namespace phonkit::remap
