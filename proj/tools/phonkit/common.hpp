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
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/core/io.hpp"
#include "phonkit/corpus/manifest.hpp"

namespace phonkit::cli {

// Bad flag combinations that CLI11 cannot express; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --jobs wins; otherwise PHONKIT_JOBS; otherwise the hardware thread count.
inline unsigned resolve_jobs(int flag) {
  if (flag > 0) return static_cast<unsigned>(flag);
  if (const char* env = std::getenv("PHONKIT_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(0..n-1) on up to `jobs` threads. Results must be written to
// per-index slots; the lowest-index exception is rethrown so failures are
// reported the same way regardless of scheduling.
inline void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Hypothesis files: one "id<TAB>ipa" line per utterance.
inline std::map<std::string, std::string> read_hypotheses(const std::filesystem::path& path) {
  std::map<std::string, std::string> out;
  auto lines = io::split_lines(io::read_file(path));
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    auto tab = lines[ln].find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string() + ": expected id<TAB>transcript", ln + 1);
    }
    std::string id = lines[ln].substr(0, tab);
    if (!out.emplace(id, lines[ln].substr(tab + 1)).second) {
      throw ParseError(path.string() + ": duplicate id '" + id + "'", ln + 1);
    }
  }
  return out;
}

// --split value "all" selects every record.
inline bool split_selected(const std::string& split, corpus::Split s) {
  return split == "all" || split == corpus::split_name(s);
}

inline void note(const std::string& msg) { std::cerr << "phonkit: " << msg << '\n'; }

}  // namespace phonkit::cli
