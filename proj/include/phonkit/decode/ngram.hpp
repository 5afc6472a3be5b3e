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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phonkit/core/error.hpp"

namespace phonkit::lm {

using WordId = std::uint32_t;
using Gram = std::vector<WordId>;

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";

// ARPA's conventional log10 of zero, used for <s> which is never predicted.
inline constexpr double kLog10Zero = -99.0;
// Unigram log10 probability given to <unk> in maximum-likelihood models.
inline constexpr double kMleUnkLog10 = -10.0;

enum class Smoothing { kneser_ney, mle };

// Back-off n-gram model in ARPA form: per order, a map from n-gram to its
// log10 probability and log10 back-off weight. Interpolated Kneser-Ney
// models are stored with the interpolated probabilities and the
// interpolation weights as back-offs, which makes the back-off recursion
// reproduce the interpolated distribution exactly.
class NGramModel {
 public:
  struct Entry {
    double log10_prob = 0.0;
    double log10_backoff = 0.0;
  };

  NGramModel() = default;

  // `vocabulary` must contain <s>, </s> and <unk>.
  NGramModel(int order, std::vector<std::string> vocabulary)
      : order_(order), vocab_(std::move(vocabulary)), tables_(order) {
    if (order < 1) throw Error("n-gram order must be at least 1");
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      if (!ids_.emplace(vocab_[i], static_cast<WordId>(i)).second) {
        throw ParseError("duplicate word '" + vocab_[i] + "' in vocabulary");
      }
    }
    bos_ = require(kBos);
    eos_ = require(kEos);
    unk_ = require(kUnk);
  }

  int order() const { return order_; }
  const std::vector<std::string>& vocabulary() const { return vocab_; }
  WordId bos() const { return bos_; }
  WordId eos() const { return eos_; }
  WordId unk() const { return unk_; }

  std::optional<WordId> find(std::string_view word) const {
    auto it = ids_.find(std::string(word));
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  // In-vocabulary test for ordinary words (markers excluded).
  bool contains(std::string_view word) const {
    auto id = find(word);
    return id && *id != bos_ && *id != eos_ && *id != unk_;
  }

  WordId id_or_unk(std::string_view word) const {
    auto id = find(word);
    return id ? *id : unk_;
  }

  const std::map<Gram, Entry>& table(int n) const {
    return tables_.at(static_cast<std::size_t>(n - 1));
  }

  void set(const Gram& gram, Entry entry) {
    if (gram.empty() || static_cast<int>(gram.size()) > order_) {
      throw Error("n-gram length out of range");
    }
    tables_[gram.size() - 1][gram] = entry;
  }

  const Entry* lookup(std::span<const WordId> gram) const {
    if (gram.empty() || static_cast<int>(gram.size()) > order_) return nullptr;
    const auto& t = tables_[gram.size() - 1];
    auto it = t.find(Gram(gram.begin(), gram.end()));
    return it == t.end() ? nullptr : &it->second;
  }

  // log10 p(word | context) by the standard back-off recursion. Only the
  // last order-1 context words matter.
  double log10_prob(std::span<const WordId> context, WordId word) const {
    std::size_t k = std::min<std::size_t>(context.size(),
                                          static_cast<std::size_t>(order_ - 1));
    double backoff = 0.0;
    Gram gram;
    for (;; --k) {
      auto h = context.subspan(context.size() - k, k);
      gram.assign(h.begin(), h.end());
      gram.push_back(word);
      if (const Entry* e = lookup(gram)) return backoff + e->log10_prob;
      if (k == 0) break;
      if (const Entry* c = lookup(h)) backoff += c->log10_backoff;
    }
    if (word != unk_) {
      if (const Entry* u = lookup(std::array<WordId, 1>{unk_})) {
        return backoff + u->log10_prob;
      }
    }
    return backoff + kLog10Zero;
  }

  // Sum of log10 p(w_i | <s> w_1 .. w_{i-1}); </s> is scored only when
  // requested. The empty sequence scores 0.
  double score_sequence(const std::vector<std::string>& words,
                        bool include_eos = false) const {
    Gram context{bos_};
    double total = 0.0;
    for (const auto& w : words) {
      WordId id = id_or_unk(w);
      total += log10_prob(context, id);
      push_context(context, id);
    }
    if (include_eos) total += log10_prob(context, eos_);
    return total;
  }

  // Appends `word` to a decoding context, keeping the last order-1 words.
  void push_context(Gram& context, WordId word) const {
    context.push_back(word);
    const auto keep = static_cast<std::size_t>(std::max(order_ - 1, 0));
    if (context.size() > keep) {
      context.erase(context.begin(),
                    context.begin() + static_cast<std::ptrdiff_t>(context.size() - keep));
    }
  }

 private:
  WordId require(std::string_view word) const {
    auto it = ids_.find(std::string(word));
    if (it == ids_.end()) {
      throw ParseError("vocabulary lacks " + std::string(word));
    }
    return it->second;
  }

  int order_ = 0;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, WordId> ids_;
  std::vector<std::map<Gram, Entry>> tables_;
  WordId bos_ = 0, eos_ = 0, unk_ = 0;
};

namespace detail {

struct Discounts {
  std::array<double, 3> d{0.75, 0.75, 0.75};  // for counts 1, 2, 3+
  bool modified = false;

  double operator()(std::uint64_t count) const {
    return d[std::min<std::uint64_t>(count, 3) - 1];
  }
};

// Chen-Goodman modified Kneser-Ney discounts from counts-of-counts, or
// absolute discounting with d = 0.75 when the statistics are too sparse.
inline Discounts estimate_discounts(const std::map<Gram, std::uint64_t>& counts) {
  std::array<double, 5> n{};
  for (const auto& [g, c] : counts) {
    if (c >= 1 && c <= 4) n[c] += 1.0;
  }
  Discounts out;
  if (n[1] == 0 || n[2] == 0 || n[3] == 0 || n[4] == 0) return out;
  const double y = n[1] / (n[1] + 2.0 * n[2]);
  std::array<double, 3> d{1.0 - 2.0 * y * n[2] / n[1],
                          2.0 - 3.0 * y * n[3] / n[2],
                          3.0 - 4.0 * y * n[4] / n[3]};
  for (int c = 0; c < 3; ++c) {
    if (!(d[c] > 0.0 && d[c] < c + 1.0)) return out;
  }
  out.d = d;
  out.modified = true;
  return out;
}

}  // namespace detail

// Trains a word n-gram model. Each sentence is padded as <s> w1 .. wm </s>;
// <s> is only ever a context. The vocabulary is <unk>, <s>, </s> followed
// by the training words in byte order.
inline NGramModel train_ngram(const std::vector<std::vector<std::string>>& sentences,
                              int order, Smoothing smoothing = Smoothing::kneser_ney) {
  if (order < 1) throw Error("n-gram order must be at least 1");
  if (sentences.empty()) throw EmptyCorpus("no training sentences for the language model");

  std::set<std::string> words;
  for (const auto& s : sentences) {
    for (const auto& w : s) {
      if (w == kBos || w == kEos || w == kUnk) {
        throw Error("training text contains reserved token " + w);
      }
      words.insert(w);
    }
  }
  std::vector<std::string> vocab{std::string(kUnk), std::string(kBos), std::string(kEos)};
  vocab.insert(vocab.end(), words.begin(), words.end());
  NGramModel model(order, vocab);
  const WordId bos = model.bos(), unk = model.unk();

  // Raw counts per order.
  const auto N = static_cast<std::size_t>(order);
  std::vector<std::map<Gram, std::uint64_t>> raw(N);
  for (const auto& s : sentences) {
    Gram padded{bos};
    for (const auto& w : s) padded.push_back(*model.find(w));
    padded.push_back(model.eos());
    for (std::size_t j = 0; j < padded.size(); ++j) {
      for (std::size_t k = 1; k <= N && j + k <= padded.size(); ++k) {
        raw[k - 1][Gram(padded.begin() + j, padded.begin() + j + k)] += 1;
      }
    }
  }

  // Counts used for estimation: raw counts at the top order and for n-grams
  // starting with <s>; continuation counts (distinct left extensions)
  // elsewhere. Maximum likelihood uses raw counts throughout.
  std::vector<std::map<Gram, std::uint64_t>> adjusted(N);
  for (std::size_t k = 1; k <= N; ++k) {
    for (const auto& [g, c] : raw[k - 1]) {
      if (k == 1 && g[0] == bos) continue;
      if (smoothing == Smoothing::mle || k == N || g[0] == bos) {
        adjusted[k - 1][g] = c;
      } else {
        adjusted[k - 1][g] = 0;
      }
    }
    if (smoothing == Smoothing::kneser_ney && k < N) {
      for (const auto& [g, c] : raw[k]) {
        Gram tail(g.begin() + 1, g.end());
        auto it = adjusted[k - 1].find(tail);
        if (it != adjusted[k - 1].end() && tail[0] != bos) it->second += 1;
      }
    }
  }

  // Uniform base distribution over every predictable word (all but <s>).
  const double uniform = 1.0 / static_cast<double>(vocab.size() - 1);

  // Probabilities in linear space, filled order by order.
  std::vector<std::map<Gram, double>> prob(N);
  std::vector<std::map<Gram, double>> gamma(N);  // keyed by context, order k-1

  for (std::size_t k = 1; k <= N; ++k) {
    const auto& counts = adjusted[k - 1];
    const detail::Discounts disc = smoothing == Smoothing::mle
                                       ? detail::Discounts{{0.0, 0.0, 0.0}, false}
                                       : detail::estimate_discounts(counts);
    struct ContextStats {
      double total = 0.0;
      double discounted = 0.0;
    };
    std::map<Gram, ContextStats> stats;
    for (const auto& [g, c] : counts) {
      Gram h(g.begin(), g.end() - 1);
      auto& st = stats[h];
      st.total += static_cast<double>(c);
      st.discounted += c > 0 ? disc(c) : 0.0;
    }
    for (const auto& [h, st] : stats) {
      gamma[k - 1][h] = st.total > 0 ? st.discounted / st.total : 1.0;
    }
    for (const auto& [g, c] : counts) {
      Gram h(g.begin(), g.end() - 1);
      const auto& st = stats[h];
      double u = st.total > 0
                     ? std::max(0.0, static_cast<double>(c) - (c > 0 ? disc(c) : 0.0)) / st.total
                     : 0.0;
      double lower;
      if (k == 1) {
        lower = uniform;
      } else {
        lower = prob[k - 2].at(Gram(g.begin() + 1, g.end()));
      }
      double g_h = gamma[k - 1][h];
      prob[k - 1][g] = smoothing == Smoothing::mle ? u : u + g_h * lower;
    }
  }

  // Unigrams always cover the whole vocabulary.
  for (WordId id = 0; id < vocab.size(); ++id) {
    Gram g{id};
    if (id == bos) {
      model.set(g, {kLog10Zero, 0.0});
      continue;
    }
    double p;
    auto it = prob[0].find(g);
    if (it != prob[0].end()) {
      p = it->second;
    } else if (smoothing == Smoothing::mle) {
      p = 0.0;
    } else {
      p = gamma[0][Gram{}] * uniform;
    }
    double lp = p > 0 ? std::log10(p) : (id == unk && smoothing == Smoothing::mle ? kMleUnkLog10 : kLog10Zero);
    model.set(g, {lp, 0.0});
  }
  for (std::size_t k = 2; k <= N; ++k) {
    for (const auto& [g, p] : prob[k - 1]) model.set(g, {std::log10(p), 0.0});
  }
  // Back-off weights on every lower-order n-gram used as a context.
  if (smoothing == Smoothing::kneser_ney) {
    for (std::size_t k = 2; k <= N; ++k) {
      for (const auto& [h, g_h] : gamma[k - 1]) {
        const auto* e = model.lookup(h);
        if (e == nullptr) continue;
        NGramModel::Entry updated = *e;
        updated.log10_backoff = std::log10(g_h);
        model.set(h, updated);
      }
    }
  }
  return model;
}

}  // namespace phonkit::lm
