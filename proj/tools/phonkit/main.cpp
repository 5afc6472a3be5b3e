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

#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "phonkit/core/error.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace phonkit::cli;
  CLI::App app{"phonkit: phoneme-level ASR toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  IngestOptions ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Parse TextGrid/EAF files into a JSON Lines manifest");
  c_ingest->add_option("--config", ingest.config, "key = value config file")->check(CLI::ExistingFile);
  c_ingest->add_option("--train", ingest.train, "Annotation files of the training split")
      ->check(CLI::ExistingFile);
  c_ingest->add_option("--test", ingest.test, "Annotation files of the test split")
      ->check(CLI::ExistingFile);
  c_ingest->add_option("--inventory", ingest.inventory, "Inventory for segmentability checks")
      ->check(CLI::ExistingFile);
  c_ingest->add_option("--out", ingest.out, "Manifest path")->required();
  c_ingest->add_option("--rejects", ingest.rejects, "Rejects TSV (default: <out>.rejects.tsv)");
  c_ingest->add_option("--logits-dir", ingest.logits_dir, "Directory of <id>.ctl1 files");
  c_ingest->add_option("--seed", ingest.seed, "Validation split seed (overrides config)");

  VocabOptions vocab;
  auto* c_vocab = app.add_subcommand("vocab", "Build a phoneme vocabulary from training transcripts");
  c_vocab->add_option("--manifest", vocab.manifest)->required()->check(CLI::ExistingFile);
  c_vocab->add_option("--out", vocab.out, "Inventory file to write")->required();
  c_vocab->add_option("--language", vocab.language);
  c_vocab->add_option("--diacritic", vocab.diacritics, "Extra diacritic marks");

  LmOptions lm;
  auto* c_lm = app.add_subcommand("lm", "Train a word n-gram model on training transcripts");
  c_lm->add_option("--manifest", lm.manifest)->required()->check(CLI::ExistingFile);
  c_lm->add_option("--out", lm.out, "ARPA file to write")->required();
  c_lm->add_option("--order", lm.order)->capture_default_str()->check(CLI::Range(1, 9));
  c_lm->add_option("--smoothing", lm.smoothing)->capture_default_str()->check(CLI::IsMember({"kn", "mle"}));

  DecodeOptions dec;
  auto* c_dec = app.add_subcommand("decode", "Decode CTC logit files into hypothesis transcripts");
  c_dec->add_option("--manifest", dec.manifest)->required()->check(CLI::ExistingFile);
  c_dec->add_option("--inventory", dec.inventory)->required()->check(CLI::ExistingFile);
  c_dec->add_option("--out", dec.out, "Hypothesis file (id<TAB>ipa)")->required();
  c_dec->add_option("--lm", dec.lm, "ARPA language model")->check(CLI::ExistingFile);
  c_dec->add_option("--logits-dir", dec.logits_dir, "Fallback directory of <id>.ctl1 files");
  c_dec->add_option("--split", dec.split)->capture_default_str()->check(CLI::IsMember({"train", "val", "test", "all"}));
  c_dec->add_option("--alpha", dec.alpha)->capture_default_str();
  c_dec->add_option("--beta", dec.beta)->capture_default_str();
  c_dec->add_option("--beam", dec.beam)->capture_default_str()->check(CLI::PositiveNumber);
  c_dec->add_option("--nbest", dec.nbest, "Also write the top-k hypotheses to <out>.nbest")
      ->capture_default_str()->check(CLI::PositiveNumber);
  c_dec->add_option("--oov-penalty", dec.oov_penalty, "log10 cost of an out-of-vocabulary word")
      ->capture_default_str();
  c_dec->add_flag("--greedy", dec.greedy, "Best-path decoding instead of beam search");
  c_dec->add_flag("--allow-missing", dec.allow_missing, "Skip utterances without logits");
  c_dec->add_flag("--raw-logits", dec.raw_logits, "Apply log-softmax to the inputs first");
  c_dec->add_option("--jobs", dec.jobs, "Worker threads (default: PHONKIT_JOBS or all cores)");

  ScoreOptions score;
  auto* c_score = app.add_subcommand("score", "Score hypotheses against the manifest");
  c_score->add_option("--manifest", score.manifest)->required()->check(CLI::ExistingFile);
  c_score->add_option("--inventory", score.inventory)->required()->check(CLI::ExistingFile);
  c_score->add_option("--hyp", score.hyps, "Hypothesis files, one per model")
      ->required()->check(CLI::ExistingFile);
  c_score->add_option("--out-dir", score.out_dir)->required();
  c_score->add_option("--split", score.split)->capture_default_str()->check(CLI::IsMember({"train", "val", "test", "all"}));
  c_score->add_option("--top-k", score.top_k)->capture_default_str()->check(CLI::PositiveNumber);
  c_score->add_option("--jobs", score.jobs);

  AnalyzeOptions an;
  auto* c_an = app.add_subcommand("analyze", "Fit the frequency/F1 sigmoid and support analyses");
  c_an->add_option("--phonemes", an.phonemes, "Per-phoneme CSV written by score")
      ->required()->check(CLI::ExistingFile);
  c_an->add_option("--inventory", an.inventory)->check(CLI::ExistingFile);
  c_an->add_option("--out-dir", an.out_dir)->required();
  c_an->add_option("--svg", an.svg, "Write a scatter plot with the fitted curve");
  c_an->add_flag("--weight-by-test-freq", an.weight_by_test_freq);
  c_an->add_option("--low-cutoff", an.low_cutoff, "Low-support train frequency bound (default 10^1.6)");
  c_an->add_option("--high-cutoff", an.high_cutoff, "High-support train frequency bound (default 10^1.9)");

  RemapOptions rm;
  auto* c_rm = app.add_subcommand("remap", "Initialize an output layer for a new vocabulary");
  c_rm->add_option("--mode", rm.mode)->required()->check(CLI::IsMember({"avg", "cpy1", "random"}));
  c_rm->add_option("--old", rm.old_weights, "WGT1 bundle")->required()->check(CLI::ExistingFile);
  c_rm->add_option("--new-vocab", rm.new_vocab, "Inventory file")->required()->check(CLI::ExistingFile);
  c_rm->add_option("--out", rm.out)->required();
  c_rm->add_option("--seed", rm.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c_ingest) return run_ingest(ingest);
    if (*c_vocab) return run_vocab(vocab);
    if (*c_lm) return run_lm(lm);
    if (*c_dec) return run_decode(dec);
    if (*c_score) return run_score(score);
    if (*c_an) return run_analyze(an);
    if (*c_rm) return run_remap(rm);
  } catch (const UsageError& e) {
    std::cerr << "phonkit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const phonkit::Error& e) {
    std::cerr << "phonkit: error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "phonkit: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
