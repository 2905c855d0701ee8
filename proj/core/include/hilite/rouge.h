// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ROUGE-1, ROUGE-2 and ROUGE-SU4 with clipped counts, optional Porter
// stemming and word truncation.
//
// Text is reduced to "ROUGE words" first: punctuation tokens dropped,
// lowercased, cut to the first limit_words words, then stemmed. Scores are
// computed per reference; precision and recall are averaged over references
// and F is the harmonic mean of the averaged pair.

#ifndef HILITE_ROUGE_H_
#define HILITE_ROUGE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hilite/corpus.h"

namespace hilite {

struct Prf {
  double p = 0.0;
  double r = 0.0;
  double f = 0.0;

  // f = 2pr / (p + r), or 0 when p + r = 0.
  static Prf FromPr(double p, double r);
  bool operator==(const Prf&) const = default;
};

struct RougeOptions {
  bool stem = true;
  int limit_words = 100;  // <= 0 disables truncation
  int skip_distance = 4;  // SU4 pairs (w_i, w_j) with j - i <= skip_distance
};

using Words = std::vector<std::string>;

Words RougeWords(std::span<const Token> tokens, const RougeOptions& options);
Words RougeWords(std::string_view text, const RougeOptions& options);

// Gram key -> count. Grams are joined with a unit separator.
using GramCounts = std::unordered_map<std::string, int>;

GramCounts NGrams(std::span<const std::string> words, int n);
// Ordered pairs within skip_distance plus all unigrams.
GramCounts SkipBigramsWithUnigrams(std::span<const std::string> words,
                                   int skip_distance);

// Clipped overlap of one candidate against one reference.
Prf Overlap(const GramCounts& candidate, const GramCounts& reference);

// The inputs are already ROUGE words. Throws std::invalid_argument on an
// empty reference list or n outside {1, 2}. An empty candidate scores 0; a
// non-empty one with no n-grams scores 1 against a reference that has none
// either, so a one-word text still matches itself under R-2.
Prf RougeN(std::span<const std::string> candidate,
           std::span<const Words> references, int n);
Prf RougeSu4(std::span<const std::string> candidate,
             std::span<const Words> references, int skip_distance = 4);

enum class Metric { kR1 = 0, kR2 = 1, kRsu4 = 2 };
inline constexpr std::array<const char*, 3> kMetricNames = {"R1", "R2",
                                                            "RSU4"};

using RougeScores = std::array<Prf, 3>;  // indexed by Metric

// References with their gram counts computed once, for repeated scoring.
class ReferenceSet {
 public:
  ReferenceSet(std::span<const Reference> references, RougeOptions options);
  ReferenceSet(std::vector<Words> reference_words, RougeOptions options);

  RougeScores Score(std::span<const Token> candidate) const;
  RougeScores ScoreWords(std::span<const std::string> candidate_words) const;
  // R-2 only; the oracle's inner loop.
  Prf R2Words(std::span<const std::string> candidate_words) const;

  const RougeOptions& options() const { return options_; }
  std::size_t size() const { return words_.size(); }

 private:
  Prf Average(const std::vector<GramCounts>& refs,
              const GramCounts& candidate, bool has_words) const;

  RougeOptions options_;
  std::vector<Words> words_;
  std::vector<GramCounts> unigrams_;
  std::vector<GramCounts> bigrams_;
  std::vector<GramCounts> skip_;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
  bool operator==(const Interval&) const = default;
};

struct PrfInterval {
  Interval p, r, f;
  bool operator==(const PrfInterval&) const = default;
};

// Mean P and R over topics, F from the means.
Prf MeanPrf(std::span<const Prf> per_topic);

// Percentile bootstrap of MeanPrf over topics. std::nullopt with fewer than
// two topics. Deterministic for a given seed on every platform.
std::optional<PrfInterval> BootstrapCi(std::span<const Prf> per_topic,
                                       int n_resamples, double level,
                                       std::uint64_t seed);

struct RougeReport {
  std::array<Prf, 3> mean;
  std::optional<std::array<PrfInterval, 3>> ci;
  int topics = 0;
  int n_bootstrap = 0;
  std::uint64_t seed = 0;
};

// per_topic[t][metric]. n_bootstrap = 0 skips intervals.
RougeReport Aggregate(std::span<const RougeScores> per_topic, int n_bootstrap,
                      std::uint64_t seed, double level = 0.95);

}  // namespace hilite

#endif  // HILITE_ROUGE_H_
