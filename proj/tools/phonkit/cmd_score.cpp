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
#include <map>
#include <set>

#include "commands.hpp"
#include "common.hpp"
#include "phonkit/analysis/support.hpp"
#include "phonkit/core/csv.hpp"
#include "phonkit/corpus/manifest.hpp"
#include "phonkit/ipa/segment.hpp"
#include "phonkit/metrics/align.hpp"
#include "phonkit/metrics/confusion.hpp"
#include "phonkit/metrics/error_rate.hpp"
#include "phonkit/metrics/tally.hpp"
#include "phonkit/metrics/wilcoxon.hpp"

namespace phonkit::cli {

namespace fs = std::filesystem;

namespace {

constexpr metrics::Level kLevels[] = {metrics::Level::word, metrics::Level::character,
                                      metrics::Level::phoneme};

struct UtteranceScore {
  metrics::ErrorCounts counts[3];
  metrics::EditScript<std::size_t> phonemes;
};

struct ModelScore {
  std::string name;
  std::vector<UtteranceScore> utterances;
  metrics::ErrorCounts totals[3];
  metrics::PhonemeTally tally;
  metrics::ConfusionMatrix confusion;
};

std::vector<std::size_t> phoneme_indices(const std::string& text, const ipa::PhonemeInventory& inv) {
  return ipa::strip_specials(ipa::segment(text, inv), inv);
}

std::string model_name(const std::string& path, std::set<std::string>& taken) {
  std::string base = fs::path(path).stem().string();
  std::string name = base;
  for (int k = 2; !taken.insert(name).second; ++k) name = base + "_" + std::to_string(k);
  return name;
}

}  // namespace

int run_score(const ScoreOptions& o) {
  auto records = corpus::load_manifest(o.manifest);
  auto inv = ipa::PhonemeInventory::load(o.inventory);
  fs::create_directories(o.out_dir);
  const fs::path dir(o.out_dir);

  std::vector<const corpus::UtteranceRecord*> refs;
  std::vector<std::uint64_t> train_freq(inv.size(), 0);
  for (const auto& r : records) {
    if (split_selected(o.split, r.split)) refs.push_back(&r);
    if (r.split == corpus::Split::train) {
      for (std::size_t i : phoneme_indices(r.ipa, inv)) ++train_freq[i];
    }
  }
  if (refs.empty()) throw EmptyCorpus("no reference utterances in split '" + o.split + "'");

  std::set<std::string> taken;
  std::vector<ModelScore> models;
  for (const auto& path : o.hyps) {
    auto hyps = read_hypotheses(path);
    std::vector<std::string> missing;
    for (const auto* r : refs) {
      if (!hyps.count(r->id)) missing.push_back(r->id);
    }
    std::set<std::string> ref_ids;
    for (const auto* r : refs) ref_ids.insert(r->id);
    std::vector<std::string> extra;
    for (const auto& [id, text] : hyps) {
      if (!ref_ids.count(id)) extra.push_back(id);
    }
    if (!missing.empty() || !extra.empty()) {
      for (const auto& id : missing) note(path + ": missing hypothesis for " + id);
      for (const auto& id : extra) note(path + ": id not in the reference split: " + id);
      throw Error(path + ": " + std::to_string(missing.size()) + " missing and " +
                  std::to_string(extra.size()) + " unexpected ids");
    }

    ModelScore m;
    m.name = model_name(path, taken);
    m.utterances.resize(refs.size());
    parallel_for(refs.size(), resolve_jobs(o.jobs), [&](std::size_t k) {
      const std::string& ref = refs[k]->ipa;
      const std::string& hyp = hyps.at(refs[k]->id);
      auto& u = m.utterances[k];
      for (int l = 0; l < 3; ++l) u.counts[l] = metrics::error_counts(kLevels[l], ref, hyp, &inv);
      u.phonemes = metrics::align(phoneme_indices(ref, inv), phoneme_indices(hyp, inv));
    });
    m.tally = metrics::PhonemeTally(inv.size());
    m.confusion = metrics::ConfusionMatrix(inv.size());
    for (const auto& u : m.utterances) {
      for (int l = 0; l < 3; ++l) m.totals[l] += u.counts[l];
      m.tally.add(u.phonemes);
      m.confusion.add(u.phonemes);
    }
    models.push_back(std::move(m));
  }

  std::vector<csv::Row> summary{{"model", "utterances", "WER", "CER", "PER"}};
  std::printf("%-24s %10s %8s %8s %8s\n", "model", "utterances", "WER", "CER", "PER");
  for (const auto& m : models) {
    summary.push_back({m.name, std::to_string(refs.size()), csv::number(m.totals[0].rate()),
                       csv::number(m.totals[1].rate()), csv::number(m.totals[2].rate())});
    std::printf("%-24s %10zu %8.3f %8.3f %8.3f\n", m.name.c_str(), refs.size(), m.totals[0].rate(),
                m.totals[1].rate(), m.totals[2].rate());
  }
  io::write_file(dir / "summary.csv", csv::format(summary));

  const auto regular = inv.regular_indices();
  std::vector<std::string> surfaces;
  for (std::size_t i = 0; i < inv.size(); ++i) surfaces.push_back(inv.surface(i));

  for (const auto& m : models) {
    std::vector<csv::Row> rows{{"surface", "complexity", "N", "S", "I", "D", "precision", "recall",
                                "f1", "train_freq", "test_freq"}};
    std::vector<analysis::WorstEntry> entries;
    std::vector<ipa::Phoneme> seen;
    std::vector<double> seen_f1;
    for (std::size_t i : regular) {
      const auto& c = m.tally.counts()[i];
      auto s = metrics::phoneme_score(c);
      const auto& p = inv.phoneme(i);
      rows.push_back({p.surface, std::to_string(p.complexity()), std::to_string(c.n),
                      std::to_string(c.s_ref), std::to_string(c.i), std::to_string(c.d),
                      csv::number(s.precision.value()), csv::number(s.recall.value()),
                      csv::number(s.f1.value()), std::to_string(train_freq[i]),
                      std::to_string(c.ref_support())});
      if (c.ref_support() > 0) {
        entries.push_back({p.surface, s.f1.value(), c.ref_support()});
        seen.push_back(p);
        seen_f1.push_back(s.f1.value());
      }
    }
    io::write_file(dir / (m.name + ".phonemes.csv"), csv::format(rows));

    auto table = analysis::category_scores(seen, seen_f1);
    std::vector<csv::Row> cats{{"category", "complexity", "phonemes", "mean_f1"}};
    for (const auto& r : table.rows) {
      cats.push_back({r.label, std::to_string(r.complexity), std::to_string(r.members),
                      csv::number(r.mean_f1)});
    }
    cats.push_back({"r", "", "", table.pearson ? csv::number(*table.pearson) : "nan"});
    io::write_file(dir / (m.name + ".categories.csv"), csv::format(cats));

    io::write_file(dir / (m.name + ".confusion.csv"), m.confusion.to_csv(surfaces, regular));

    std::string worst;
    for (const auto& e : analysis::worst_phonemes(entries, static_cast<std::size_t>(o.top_k))) {
      worst += analysis::format_triplet(e) + '\n';
    }
    io::write_file(dir / (m.name + ".worst.txt"), worst);
  }

  if (models.size() >= 2) {
    const char* names[] = {"wer", "cer", "per"};
    for (int l = 0; l < 3; ++l) {
      std::vector<csv::Row> matrix;
      csv::Row header{""};
      for (const auto& m : models) header.push_back(m.name);
      matrix.push_back(header);
      for (const auto& a : models) {
        csv::Row row{a.name};
        for (const auto& b : models) {
          if (&a == &b) {
            row.push_back("-");
            continue;
          }
          std::vector<double> xa, xb;
          for (std::size_t k = 0; k < refs.size(); ++k) {
            xa.push_back(a.utterances[k].counts[l].rate());
            xb.push_back(b.utterances[k].counts[l].rate());
          }
          row.push_back(metrics::format_p_value(metrics::wilcoxon_signed_rank(xa, xb).p_value));
        }
        matrix.push_back(row);
      }
      io::write_file(dir / (std::string("wilcoxon_") + names[l] + ".csv"), csv::format(matrix));
    }
  }
  std::cout << "reports written to " << o.out_dir << '\n';
  return 0;
}

}  // namespace phonkit::cli
