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

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "common.hpp"
#include "phonkit/core/unicode.hpp"
#include "phonkit/corpus/manifest.hpp"
#include "phonkit/decode/arpa.hpp"
#include "phonkit/decode/ctc.hpp"
#include "phonkit/decode/logits.hpp"
#include "phonkit/ipa/segment.hpp"

namespace phonkit::cli {

namespace fs = std::filesystem;

namespace {

std::optional<fs::path> find_logits(const corpus::UtteranceRecord& r, const fs::path& manifest_dir,
                                    const std::string& logits_dir) {
  if (r.logits_path) {
    fs::path p(*r.logits_path);
    if (fs::exists(p)) return p;
    if (p.is_relative() && fs::exists(manifest_dir / p)) return manifest_dir / p;
  }
  if (!logits_dir.empty()) {
    fs::path p = fs::path(logits_dir) / (r.id + ".ctl1");
    if (fs::exists(p)) return p;
  }
  return std::nullopt;
}

// Specials other than the word separator (e.g. <unk>) have no IPA surface
// and are left out of the written transcript.
std::string transcript(const decode::Labels& labels, const ipa::PhonemeInventory& inv) {
  decode::Labels kept;
  for (std::size_t l : labels) {
    if (!inv.is_special(l) || l == inv.separator_index()) kept.push_back(l);
  }
  return unicode::collapse_whitespace(ipa::render(kept, inv));
}

}  // namespace

int run_decode(const DecodeOptions& o) {
  auto records = corpus::load_manifest(o.manifest);
  auto inv = ipa::PhonemeInventory::load(o.inventory);
  std::optional<lm::NGramModel> model;
  if (!o.lm.empty()) model = lm::import_arpa(o.lm);
  if (o.greedy && (model || o.nbest > 1)) throw UsageError("--greedy cannot be combined with --lm or --nbest");

  const fs::path manifest_dir = fs::path(o.manifest).parent_path();
  std::vector<const corpus::UtteranceRecord*> todo;
  std::vector<fs::path> paths;
  std::vector<std::string> missing;
  for (const auto& r : records) {
    if (!split_selected(o.split, r.split)) continue;
    if (auto p = find_logits(r, manifest_dir, o.logits_dir)) {
      todo.push_back(&r);
      paths.push_back(*p);
    } else {
      missing.push_back(r.id);
    }
  }
  if (!missing.empty()) {
    for (const auto& id : missing) note("no logits for " + id);
    if (!o.allow_missing) {
      throw Error(std::to_string(missing.size()) + " utterances lack logits (use --allow-missing to skip them)");
    }
  }

  decode::FusionOptions fusion;
  fusion.lm = model ? &*model : nullptr;
  fusion.alpha = o.alpha;
  fusion.beta = o.beta;
  fusion.oov_log10 = o.oov_penalty;

  std::vector<std::vector<decode::Hypothesis>> results(todo.size());
  parallel_for(todo.size(), resolve_jobs(o.jobs), [&](std::size_t i) {
    auto m = decode::load_ctl1(paths[i]);
    if (o.raw_logits) m = m.log_softmax();
    try {
      m.validate();
    } catch (const InvalidLogits& e) {
      throw InvalidLogits(paths[i].string() + ": " + e.what());
    }
    if (o.greedy) {
      decode::check_shape(m, inv);
      decode::Hypothesis h;
      h.labels = decode::greedy_decode(m, inv);
      results[i].push_back(std::move(h));
    } else {
      results[i] = decode::beam_search(m, inv, fusion, static_cast<std::size_t>(o.beam),
                                       static_cast<std::size_t>(o.nbest));
    }
  });

  std::string out, nbest;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    const auto& hyps = results[i];
    out += todo[i]->id + '\t' + (hyps.empty() ? "" : transcript(hyps.front().labels, inv)) + '\n';
    for (std::size_t k = 0; o.nbest > 1 && k < hyps.size(); ++k) {
      char score[32];
      std::snprintf(score, sizeof score, "%.6f", hyps[k].score);
      nbest += todo[i]->id + '\t' + std::to_string(k + 1) + '\t' + score + '\t' +
               transcript(hyps[k].labels, inv) + '\n';
    }
  }
  io::write_file(o.out, out);
  if (o.nbest > 1) io::write_file(o.out + ".nbest", nbest);
  std::cout << "decoded " << todo.size() << " utterances ("
            << (o.greedy ? "greedy" : "beam " + std::to_string(o.beam)) << (model ? ", LM" : "")
            << ") to " << o.out << '\n';
  return 0;
}

}  // namespace phonkit::cli
