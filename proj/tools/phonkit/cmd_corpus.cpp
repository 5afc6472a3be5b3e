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

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <regex>

#include "commands.hpp"
#include "common.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/corpus/config.hpp"
#include "phonkit/corpus/eaf.hpp"
#include "phonkit/corpus/manifest.hpp"
#include "phonkit/corpus/summary.hpp"
#include "phonkit/corpus/textgrid.hpp"
#include "phonkit/decode/arpa.hpp"
#include "phonkit/decode/ngram.hpp"
#include "phonkit/remap/vocab.hpp"

namespace phonkit::cli {

namespace fs = std::filesystem;

namespace {

corpus::Annotations parse_annotation_file(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".textgrid") return corpus::parse_textgrid(path);
  if (ext == ".eaf") return corpus::parse_eaf(path);
  throw Error(path + ": unknown annotation format (expected .TextGrid or .eaf)");
}

}  // namespace

int run_ingest(const IngestOptions& o) {
  if (o.train.empty() && o.test.empty()) throw UsageError("ingest needs --train and/or --test files");
  corpus::IngestConfig cfg = o.config.empty() ? corpus::IngestConfig{} : corpus::load_config(o.config);
  if (o.seed) cfg.split_seed = *o.seed;

  std::optional<std::regex> test_re;
  if (!cfg.test_pattern.empty()) test_re.emplace(cfg.test_pattern, std::regex::ECMAScript);

  std::vector<corpus::SourceFile> sources;
  auto add = [&](const std::string& path, corpus::Split split) {
    corpus::SourceFile src{path, split, parse_annotation_file(path)};
    if (split == corpus::Split::train && test_re &&
        std::regex_search(fs::path(path).filename().string(), *test_re)) {
      src.split = corpus::Split::test;
    }
    for (const auto& w : src.annotations.warnings) note(w);
    sources.push_back(std::move(src));
  };
  for (const auto& p : o.train) add(p, corpus::Split::train);
  for (const auto& p : o.test) add(p, corpus::Split::test);

  corpus::ManifestOptions opt;
  opt.rules.strip_set = cfg.strip_set;
  for (const auto& t : cfg.tables) opt.rules.tables.push_back(ipa::TransliterationTable::load(t));
  opt.tier_pattern = cfg.tier_pattern;
  opt.seed = cfg.split_seed;
  opt.val_ratio = cfg.val_ratio;

  std::optional<ipa::PhonemeInventory> inv;
  if (!o.inventory.empty()) {
    inv = ipa::PhonemeInventory::load(o.inventory);
  } else if (cfg.inventory) {
    inv = ipa::PhonemeInventory::load(*cfg.inventory);
  }
  if (inv) opt.inventory = &*inv;
  std::optional<ipa::TransliterationTable> cyr;
  if (cfg.cyrillic_table) {
    cyr = ipa::TransliterationTable::load(*cfg.cyrillic_table);
    opt.cyrillic = &*cyr;
  }
  if (!o.logits_dir.empty()) opt.logits_dir = o.logits_dir;

  auto manifest = corpus::build_manifest(sources, opt);
  corpus::save_manifest(manifest.records, o.out);
  std::string rejects = o.rejects.empty() ? o.out + ".rejects.tsv" : o.rejects;
  io::write_file(rejects, corpus::rejects_tsv(manifest.rejects));

  std::cout << "wrote " << manifest.records.size() << " utterances to " << o.out << " ("
            << manifest.rejects.size() << " rejected, see " << rejects << ")\n";
  if (inv) {
    auto summary = corpus::summarize(manifest.records, *inv);
    std::cout << corpus::format_summary(summary, cfg.language.empty() ? inv->language() : cfg.language);
  }
  return 0;
}

int run_vocab(const VocabOptions& o) {
  auto records = corpus::load_manifest(o.manifest);
  std::vector<std::string> transcripts;
  for (const auto& r : records) {
    if (r.split != corpus::Split::test) transcripts.push_back(r.ipa);
  }
  auto inv = remap::build_vocab(transcripts, o.diacritics, o.language);
  inv.save(o.out);
  std::size_t composite = 0;
  for (std::size_t i : inv.regular_indices()) composite += inv.phoneme(i).is_composite();
  std::cout << "vocabulary of " << inv.size() << " entries (" << inv.regular_indices().size()
            << " phonemes, " << composite << " composite) written to " << o.out << '\n';
  return 0;
}

int run_lm(const LmOptions& o) {
  auto records = corpus::load_manifest(o.manifest);
  std::vector<std::vector<std::string>> sentences;
  for (const auto& r : records) {
    if (r.split == corpus::Split::train) sentences.push_back(unicode::split_words(r.ipa));
  }
  auto smoothing = o.smoothing == "mle" ? lm::Smoothing::mle : lm::Smoothing::kneser_ney;
  auto model = lm::train_ngram(sentences, o.order, smoothing);
  lm::export_arpa(model, o.out);
  std::cout << o.order << "-gram model over " << model.vocabulary().size() - 3 << " words from "
            << sentences.size() << " sentences written to " << o.out << '\n';
  return 0;
}

}  // namespace phonkit::cli
