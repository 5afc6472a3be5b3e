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
#include <optional>
#include <string>
#include <vector>

namespace phonkit::cli {

struct IngestOptions {
  std::string config;
  std::vector<std::string> train;
  std::vector<std::string> test;
  std::string inventory;
  std::string out;
  std::string rejects;
  std::string logits_dir;
  std::optional<std::uint64_t> seed;
};

struct VocabOptions {
  std::string manifest;
  std::string out;
  std::string language;
  std::vector<std::string> diacritics;
};

struct LmOptions {
  std::string manifest;
  std::string out;
  int order = 3;
  std::string smoothing = "kn";
};

struct DecodeOptions {
  std::string manifest;
  std::string inventory;
  std::string out;
  std::string lm;
  std::string logits_dir;
  std::string split = "test";
  double alpha = 0.3;
  double beta = 0.3;
  int beam = 10;
  int nbest = 1;
  double oov_penalty = -10.0;
  bool greedy = false;
  bool allow_missing = false;
  bool raw_logits = false;
  int jobs = 0;
};

struct ScoreOptions {
  std::string manifest;
  std::string inventory;
  std::vector<std::string> hyps;
  std::string out_dir;
  std::string split = "test";
  int top_k = 10;
  int jobs = 0;
};

struct AnalyzeOptions {
  std::string phonemes;
  std::string inventory;
  std::string out_dir;
  std::string svg;
  bool weight_by_test_freq = false;
  double low_cutoff = 0.0;   // 0 selects the default
  double high_cutoff = 0.0;  // 0 selects the default
};

struct RemapOptions {
  std::string mode;
  std::string old_weights;
  std::string new_vocab;
  std::string out;
  std::uint64_t seed = 0;
};

int run_ingest(const IngestOptions& o);
int run_vocab(const VocabOptions& o);
int run_lm(const LmOptions& o);
int run_decode(const DecodeOptions& o);
int run_score(const ScoreOptions& o);
int run_analyze(const AnalyzeOptions& o);
int run_remap(const RemapOptions& o);

}  // namespace phonkit::cli
