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

// Candidate sub-sentence segments: exhaustive span enumeration inside a
// chunk, and the upper-quartile filter over boundary probabilities.

#ifndef HILITE_SEGMENTER_H_
#define HILITE_SEGMENTER_H_

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hilite/corpus.h"

namespace hilite {

// Inclusive token range [first, last] within one sentence.
struct TokenSpan {
  std::size_t first = 0;
  std::size_t last = 0;

  auto operator<=>(const TokenSpan&) const = default;
};

struct CandidateSegment {
  int segment_id = -1;
  std::string doc_id;
  int sentence_index = 0;
  TokenSpan span;
  int word_count = 0;
  double p_start = 0.0;
  double p_end = 0.0;
  double p_self = 0.0;  // (p_start + p_end) / 2
  int rank = 0;         // position within its sentence after ranking

  SpanRef ref() const {
    return SpanRef{doc_id, sentence_index, span.first, span.last};
  }
  bool operator==(const CandidateSegment&) const = default;
};

inline constexpr int kDefaultMinWords = 5;
inline constexpr int kDefaultMaxPerSentence = 4;

// Every span inside the chunk that starts and ends on a word and holds at
// least min_words words, ordered by (start, end). For a chunk of N words and
// min_words = 5 there are (N-4)(N-3)/2 of them.
std::vector<TokenSpan> EnumerateCandidates(const Sentence& sentence,
                                           const Chunk& chunk, int min_words);

// Nearest-rank upper quartile: the ceil(0.75 n)-th smallest value.
// Requires a non-empty input.
double UpperQuartile(std::vector<double> values);

// Drops candidates whose p_start or p_end is strictly below the chunk's upper
// quartile of that statistic. Survivors come back sorted by p_self
// descending, then earlier start, then shorter span.
std::vector<CandidateSegment> QuartileFilter(
    std::span<const CandidateSegment> candidates);

// Ranking order used by QuartileFilter and by per-sentence truncation.
bool RanksBefore(const CandidateSegment& a, const CandidateSegment& b);

}  // namespace hilite

#endif  // HILITE_SEGMENTER_H_
