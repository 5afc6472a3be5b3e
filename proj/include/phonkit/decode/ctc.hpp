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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "phonkit/core/error.hpp"
#include "phonkit/decode/logits.hpp"
#include "phonkit/decode/ngram.hpp"
#include "phonkit/ipa/inventory.hpp"

namespace phonkit::decode {

using Labels = std::vector<std::size_t>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

inline void check_shape(const LogitMatrix& logits, const ipa::PhonemeInventory& inv) {
  if (logits.vocab() != inv.size()) {
    throw ShapeError("logit matrix has V=" + std::to_string(logits.vocab()) +
                     " but the inventory has " + std::to_string(inv.size()) + " entries");
  }
}

// Best path: per-frame argmax (lowest index on ties), repeats collapsed,
// blanks dropped.
inline Labels greedy_decode(const LogitMatrix& logits, const ipa::PhonemeInventory& inv) {
  check_shape(logits, inv);
  logits.validate(/*allow_raw=*/true);
  Labels out;
  std::size_t prev = inv.blank_index();
  for (std::size_t t = 0; t < logits.frames(); ++t) {
    auto row = logits.row(t);
    std::size_t best = static_cast<std::size_t>(
        std::max_element(row.begin(), row.end()) - row.begin());
    if (best != prev && best != inv.blank_index()) out.push_back(best);
    prev = best;
  }
  return out;
}

// Word-level language model contribution of a label sequence: words are the
// runs between separators, scored left to right from <s>. Words outside the
// model vocabulary cost `oov_log10` and enter the context as <unk>.
struct WordScore {
  double lm_log10 = 0.0;
  std::size_t words = 0;
};

struct FusionOptions {
  const lm::NGramModel* lm = nullptr;
  double alpha = 0.3;
  double beta = 0.3;
  double oov_log10 = -10.0;
};

namespace detail {

struct LmState {
  WordScore score;
  lm::Gram context;
  std::string pending;
};

inline void close_word(LmState& s, const FusionOptions& fusion) {
  if (s.pending.empty()) return;
  const lm::NGramModel& lm = *fusion.lm;
  lm::WordId id = lm.unk();
  if (lm.contains(s.pending)) {
    id = *lm.find(s.pending);
    s.score.lm_log10 += lm.log10_prob(s.context, id);
  } else {
    s.score.lm_log10 += fusion.oov_log10;
  }
  s.score.words += 1;
  lm.push_context(s.context, id);
  s.pending.clear();
}

inline LmState extend(const LmState& s, std::size_t label, const ipa::PhonemeInventory& inv,
                      const FusionOptions& fusion) {
  LmState next = s;
  if (label == inv.separator_index()) {
    close_word(next, fusion);
  } else {
    next.pending += inv.surface(label);
  }
  return next;
}

// alpha and beta weight the LM in natural-log units so they combine with the
// CTC log-probabilities on one scale.
inline double fused_bonus(const WordScore& s, const FusionOptions& fusion) {
  if (fusion.lm == nullptr) return 0.0;
  return fusion.alpha * std::numbers::ln10 * s.lm_log10 +
         fusion.beta * static_cast<double>(s.words);
}

struct PrefixHash {
  std::size_t operator()(const Labels& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t x : v) h = (h ^ (x + 0x9e3779b97f4a7c15ull)) * 1099511628211ull;
    return h;
  }
};

// Higher score first; exact ties go to the shorter, then lexicographically
// smaller label sequence.
inline bool ranks_before(double sa, const Labels& a, double sb, const Labels& b) {
  if (sa != sb) return sa > sb;
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace detail

inline WordScore score_words(const Labels& labels, const ipa::PhonemeInventory& inv,
                             const FusionOptions& fusion) {
  if (fusion.lm == nullptr) return {};
  detail::LmState s{{}, {fusion.lm->bos()}, {}};
  for (std::size_t l : labels) s = detail::extend(s, l, inv, fusion);
  detail::close_word(s, fusion);
  return s.score;
}

// log p(labels | logits) summed over all CTC alignments (forward algorithm).
inline double ctc_log_prob(const LogitMatrix& logits, const Labels& labels, std::size_t blank) {
  const std::size_t T = logits.frames();
  const std::size_t S = 2 * labels.size() + 1;
  auto label_at = [&](std::size_t s) { return s % 2 == 0 ? blank : labels[s / 2]; };
  std::vector<double> alpha(S, kNegInf), next(S);
  if (T == 0) return labels.empty() ? 0.0 : kNegInf;
  alpha[0] = logits(0, blank);
  if (S > 1) alpha[1] = logits(0, label_at(1));
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      double a = alpha[s];
      if (s >= 1) a = log_add(a, alpha[s - 1]);
      if (s >= 2 && s % 2 == 1 && label_at(s) != label_at(s - 2)) a = log_add(a, alpha[s - 2]);
      next[s] = a == kNegInf ? kNegInf : a + logits(t, label_at(s));
    }
    std::swap(alpha, next);
  }
  return S > 1 ? log_add(alpha[S - 1], alpha[S - 2]) : alpha[0];
}

// ctc + alpha * ln(10) * lm_log10 + beta * words for one label sequence.
inline double fused_objective(const LogitMatrix& logits, const Labels& labels,
                              const ipa::PhonemeInventory& inv, const FusionOptions& fusion) {
  return ctc_log_prob(logits, labels, inv.blank_index()) +
         detail::fused_bonus(score_words(labels, inv, fusion), fusion);
}

struct Hypothesis {
  Labels labels;
  double ctc = kNegInf;  // prefix log-probability (blank + non-blank endings)
  WordScore lm;
  double score = kNegInf;  // ctc plus fusion terms
};

// CTC prefix beam search with word-level shallow fusion. Each prefix keeps
// separate log-probabilities for paths ending in blank and in a label, so
// all alignments of one collapsed sequence are merged. When a separator
// closes a word, and once more at the end for a trailing word, the LM score
// and the word bonus are added. Without an LM this is plain prefix search.
inline std::vector<Hypothesis> beam_search(const LogitMatrix& logits,
                                           const ipa::PhonemeInventory& inv,
                                           const FusionOptions& fusion, std::size_t beam,
                                           std::size_t nbest = 1) {
  check_shape(logits, inv);
  logits.validate(/*allow_raw=*/true);
  if (beam == 0) throw Error("beam width must be positive");
  const std::size_t blank = inv.blank_index();
  const std::size_t V = logits.vocab();

  struct Scores {
    double pb = kNegInf;
    double pnb = kNegInf;
    double total() const { return log_add(pb, pnb); }
  };
  using Table = std::unordered_map<Labels, Scores, detail::PrefixHash>;
  std::unordered_map<Labels, detail::LmState, detail::PrefixHash> states;
  auto state_of = [&](const Labels& prefix) -> const detail::LmState& {
    auto it = states.find(prefix);
    if (it != states.end()) return it->second;
    detail::LmState s{{}, {}, {}};
    if (fusion.lm != nullptr) {
      if (prefix.empty()) {
        s.context = {fusion.lm->bos()};
      } else {
        Labels parent(prefix.begin(), prefix.end() - 1);
        s = detail::extend(states.at(parent), prefix.back(), inv, fusion);
      }
    }
    return states.emplace(prefix, std::move(s)).first->second;
  };

  std::vector<std::pair<Labels, Scores>> beams{{Labels{}, Scores{0.0, kNegInf}}};
  state_of(Labels{});
  for (std::size_t t = 0; t < logits.frames(); ++t) {
    Table next;
    for (const auto& [prefix, s] : beams) {
      for (std::size_t c = 0; c < V; ++c) {
        const double p = logits(t, c);
        if (c == blank) {
          auto& n = next[prefix];
          n.pb = log_add(n.pb, s.total() + p);
          continue;
        }
        Labels ext = prefix;
        ext.push_back(c);
        if (!prefix.empty() && prefix.back() == c) {
          auto& ne = next[ext];
          ne.pnb = log_add(ne.pnb, s.pb + p);
          auto& np = next[prefix];
          np.pnb = log_add(np.pnb, s.pnb + p);
        } else {
          auto& ne = next[ext];
          ne.pnb = log_add(ne.pnb, s.total() + p);
        }
        if (fusion.lm != nullptr && !states.count(ext)) state_of(ext);
      }
    }
    std::vector<std::tuple<double, Labels, Scores>> ranked;
    ranked.reserve(next.size());
    for (auto& [prefix, s] : next) {
      double score = s.total() + detail::fused_bonus(state_of(prefix).score, fusion);
      ranked.emplace_back(score, prefix, s);
    }
    const std::size_t keep = std::min(beam, ranked.size());
    auto cmp = [](const auto& a, const auto& b) {
      return detail::ranks_before(std::get<0>(a), std::get<1>(a), std::get<0>(b), std::get<1>(b));
    };
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep),
                      ranked.end(), cmp);
    beams.clear();
    for (std::size_t k = 0; k < keep; ++k) {
      beams.emplace_back(std::move(std::get<1>(ranked[k])), std::get<2>(ranked[k]));
    }
  }

  std::vector<Hypothesis> finals;
  finals.reserve(beams.size());
  for (const auto& [prefix, s] : beams) {
    Hypothesis h;
    h.labels = prefix;
    h.ctc = s.total();
    if (fusion.lm != nullptr) {
      detail::LmState st = state_of(prefix);
      detail::close_word(st, fusion);
      h.lm = st.score;
    }
    h.score = h.ctc + detail::fused_bonus(h.lm, fusion);
    finals.push_back(std::move(h));
  }
  std::sort(finals.begin(), finals.end(), [](const Hypothesis& a, const Hypothesis& b) {
    return detail::ranks_before(a.score, a.labels, b.score, b.labels);
  });
  if (finals.size() > nbest) finals.resize(nbest);
  return finals;
}

inline Labels beam_decode(const LogitMatrix& logits, const ipa::PhonemeInventory& inv,
                          const FusionOptions& fusion, std::size_t beam) {
  auto hyps = beam_search(logits, inv, fusion, beam, 1);
  return hyps.empty() ? Labels{} : hyps.front().labels;
}

}  // namespace phonkit::decode
