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

#include "hilite/rouge.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hilite/porter_stemmer.h"

namespace hilite {
namespace {

constexpr char kSep = '\x1f';

std::vector<GramCounts> CountAll(const std::vector<Words>& words, int n) {
  std::vector<GramCounts> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(NGrams(w, n));
  return out;
}

std::vector<GramCounts> CountSkip(const std::vector<Words>& words, int d) {
  std::vector<GramCounts> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(SkipBigramsWithUnigrams(w, d));
  return out;
}

// A non-empty candidate too short for any n-gram matches a reference that is
// equally short; otherwise 0/0 counts as 0.
Prf AverageOver(std::span<const GramCounts> refs, const GramCounts& cand,
                bool has_words) {
  if (refs.empty()) throw std::invalid_argument("ROUGE needs a reference");
  double p = 0.0, r = 0.0;
  for (const auto& ref : refs) {
    const Prf s = has_words && cand.empty() && ref.empty() ? Prf{1, 1, 1}
                                                           : Overlap(cand, ref);
    p += s.p;
    r += s.r;
  }
  const double n = static_cast<double>(refs.size());
  return Prf::FromPr(p / n, r / n);
}

// Maps a draw onto [0, n). The modulo bias is below n / 2^64; unlike
// std::uniform_int_distribution the result is the same on every standard
// library.
std::size_t DrawIndex(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

double NearestRank(std::vector<double>& sorted, double q) {
  const auto b = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * b));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

}  // namespace

Prf Prf::FromPr(double p, double r) {
  return Prf{p, r, p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0};
}

Words RougeWords(std::span<const Token> tokens, const RougeOptions& options) {
  Words out;
  for (const auto& t : tokens) {
    if (t.is_punct) continue;
    if (options.limit_words > 0 &&
        static_cast<int>(out.size()) >= options.limit_words) {
      break;
    }
    std::string w = AsciiLower(t.text);
    out.push_back(options.stem ? PorterStem(w) : std::move(w));
  }
  return out;
}

Words RougeWords(std::string_view text, const RougeOptions& options) {
  return RougeWords(Tokenize(text), options);
}

GramCounts NGrams(std::span<const std::string> words, int n) {
  GramCounts out;
  if (n < 1 || words.size() < static_cast<std::size_t>(n)) return out;
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    std::string key = words[i];
    for (int k = 1; k < n; ++k) {
      key.push_back(kSep);
      key += words[i + k];
    }
    ++out[key];
  }
  return out;
}

GramCounts SkipBigramsWithUnigrams(std::span<const std::string> words,
                                   int skip_distance) {
  GramCounts out = NGrams(words, 1);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = i + 1;
         j < words.size() && j - i <= static_cast<std::size_t>(skip_distance);
         ++j) {
      std::string key = words[i];
      key.push_back(kSep);
      key += words[j];
      // Unigram keys have no separator, so pairs never collide with them.
      ++out[key];
    }
  }
  return out;
}

Prf Overlap(const GramCounts& candidate, const GramCounts& reference) {
  long cand_total = 0, ref_total = 0, hits = 0;
  for (const auto& [g, c] : candidate) {
    cand_total += c;
    if (auto it = reference.find(g); it != reference.end()) {
      hits += std::min(c, it->second);
    }
  }
  for (const auto& [g, c] : reference) ref_total += c;
  const double p = cand_total > 0 ? static_cast<double>(hits) / cand_total : 0.0;
  const double r = ref_total > 0 ? static_cast<double>(hits) / ref_total : 0.0;
  return Prf::FromPr(p, r);
}

Prf RougeN(std::span<const std::string> candidate,
           std::span<const Words> references, int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("ROUGE-N needs n in {1, 2}");
  if (references.empty()) throw std::invalid_argument("ROUGE needs a reference");
  std::vector<GramCounts> refs;
  for (const auto& r : references) refs.push_back(NGrams(r, n));
  return AverageOver(refs, NGrams(candidate, n), !candidate.empty());
}

Prf RougeSu4(std::span<const std::string> candidate,
             std::span<const Words> references, int skip_distance) {
  if (references.empty()) throw std::invalid_argument("ROUGE needs a reference");
  std::vector<GramCounts> refs;
  for (const auto& r : references) {
    refs.push_back(SkipBigramsWithUnigrams(r, skip_distance));
  }
  return AverageOver(refs, SkipBigramsWithUnigrams(candidate, skip_distance),
                     !candidate.empty());
}

// ---------------------------------------------------------------------------
// ReferenceSet

ReferenceSet::ReferenceSet(std::span<const Reference> references,
                           RougeOptions options)
    : options_(options) {
  for (const auto& r : references) words_.push_back(RougeWords(r.tokens, options_));
  if (words_.empty()) throw std::invalid_argument("ROUGE needs a reference");
  unigrams_ = CountAll(words_, 1);
  bigrams_ = CountAll(words_, 2);
  skip_ = CountSkip(words_, options_.skip_distance);
}

ReferenceSet::ReferenceSet(std::vector<Words> reference_words,
                           RougeOptions options)
    : options_(options), words_(std::move(reference_words)) {
  if (words_.empty()) throw std::invalid_argument("ROUGE needs a reference");
  unigrams_ = CountAll(words_, 1);
  bigrams_ = CountAll(words_, 2);
  skip_ = CountSkip(words_, options_.skip_distance);
}

Prf ReferenceSet::Average(const std::vector<GramCounts>& refs,
                          const GramCounts& candidate, bool has_words) const {
  return AverageOver(refs, candidate, has_words);
}

RougeScores ReferenceSet::Score(std::span<const Token> candidate) const {
  return ScoreWords(RougeWords(candidate, options_));
}

RougeScores ReferenceSet::ScoreWords(
    std::span<const std::string> candidate_words) const {
  const bool has_words = !candidate_words.empty();
  RougeScores s;
  s[static_cast<int>(Metric::kR1)] =
      Average(unigrams_, NGrams(candidate_words, 1), has_words);
  s[static_cast<int>(Metric::kR2)] =
      Average(bigrams_, NGrams(candidate_words, 2), has_words);
  s[static_cast<int>(Metric::kRsu4)] = Average(
      skip_, SkipBigramsWithUnigrams(candidate_words, options_.skip_distance),
      has_words);
  return s;
}

Prf ReferenceSet::R2Words(std::span<const std::string> candidate_words) const {
  return Average(bigrams_, NGrams(candidate_words, 2), !candidate_words.empty());
}

// ---------------------------------------------------------------------------
// Aggregation

Prf MeanPrf(std::span<const Prf> per_topic) {
  if (per_topic.empty()) return Prf{};
  double p = 0.0, r = 0.0;
  for (const auto& s : per_topic) {
    p += s.p;
    r += s.r;
  }
  const double n = static_cast<double>(per_topic.size());
  return Prf::FromPr(p / n, r / n);
}

std::optional<PrfInterval> BootstrapCi(std::span<const Prf> per_topic,
                                       int n_resamples, double level,
                                       std::uint64_t seed) {
  if (per_topic.size() < 2 || n_resamples < 1) return std::nullopt;
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  const std::size_t n = per_topic.size();
  std::vector<double> ps, rs, fs;
  ps.reserve(n_resamples);
  rs.reserve(n_resamples);
  fs.reserve(n_resamples);
  std::vector<Prf> sample(n);
  for (int b = 0; b < n_resamples; ++b) {
    for (std::size_t k = 0; k < n; ++k) sample[k] = per_topic[DrawIndex(rng, n)];
    const Prf m = MeanPrf(sample);
    ps.push_back(m.p);
    rs.push_back(m.r);
    fs.push_back(m.f);
  }
  const double alpha = 1.0 - level;
  PrfInterval out;
  for (auto [v, iv] : {std::pair{&ps, &out.p}, std::pair{&rs, &out.r},
                       std::pair{&fs, &out.f}}) {
    std::sort(v->begin(), v->end());
    iv->low = NearestRank(*v, alpha / 2.0);
    iv->high = NearestRank(*v, 1.0 - alpha / 2.0);
  }
  return out;
}

RougeReport Aggregate(std::span<const RougeScores> per_topic, int n_bootstrap,
                      std::uint64_t seed, double level) {
  RougeReport report;
  report.topics = static_cast<int>(per_topic.size());
  report.n_bootstrap = n_bootstrap;
  report.seed = seed;
  std::array<PrfInterval, 3> cis;
  bool have_ci = n_bootstrap > 0 && per_topic.size() >= 2;
  for (int m = 0; m < 3; ++m) {
    std::vector<Prf> col;
    col.reserve(per_topic.size());
    for (const auto& s : per_topic) col.push_back(s[m]);
    report.mean[m] = MeanPrf(col);
    if (have_ci) {
      // Same seed per metric, so all three use the same resamples.
      cis[m] = *BootstrapCi(col, n_bootstrap, level, seed);
    }
  }
  if (have_ci) report.ci = cis;
  return report;
}

}  // namespace hilite
