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

#include "hilite/segmenter.h"

#include <algorithm>
#include <stdexcept>

namespace hilite {

std::vector<TokenSpan> EnumerateCandidates(const Sentence& sentence,
                                           const Chunk& chunk, int min_words) {
  if (min_words < 1) throw std::invalid_argument("min_words must be >= 1");
  // Word positions inside the chunk; spans begin and end on words so that
  // punctuation inside a chunk does not produce duplicate spans.
  std::vector<std::size_t> words;
  for (std::size_t k = chunk.first; k <= chunk.last; ++k) {
    if (!sentence.tokens[k].is_punct) words.push_back(k);
  }
  std::vector<TokenSpan> spans;
  const auto n = static_cast<std::ptrdiff_t>(words.size());
  for (std::ptrdiff_t a = 0; a < n; ++a) {
    for (std::ptrdiff_t b = a + min_words - 1; b < n; ++b) {
      spans.push_back(TokenSpan{words[a], words[b]});
    }
  }
  return spans;
}

double UpperQuartile(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("UpperQuartile of nothing");
  const std::size_t n = values.size();
  const std::size_t rank = (3 * n + 3) / 4;  // ceil(0.75 n), 1-based
  std::nth_element(values.begin(), values.begin() + (rank - 1), values.end());
  return values[rank - 1];
}

bool RanksBefore(const CandidateSegment& a, const CandidateSegment& b) {
  if (a.p_self != b.p_self) return a.p_self > b.p_self;
  if (a.span.first != b.span.first) return a.span.first < b.span.first;
  return a.span.last < b.span.last;
}

std::vector<CandidateSegment> QuartileFilter(
    std::span<const CandidateSegment> candidates) {
  if (candidates.empty()) return {};
  std::vector<double> starts, ends;
  starts.reserve(candidates.size());
  ends.reserve(candidates.size());
  for (const auto& c : candidates) {
    starts.push_back(c.p_start);
    ends.push_back(c.p_end);
  }
  const double q3_start = UpperQuartile(std::move(starts));
  const double q3_end = UpperQuartile(std::move(ends));

  std::vector<CandidateSegment> kept;
  for (const auto& c : candidates) {
    if (c.p_start < q3_start || c.p_end < q3_end) continue;
    kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), RanksBefore);
  return kept;
}

}  // namespace hilite
