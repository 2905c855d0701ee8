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

// Ground-truth segment labels from reference summaries, in two greedy steps:
// pick summary sentences by R-2 F, then the best candidate segment inside
// each picked sentence.

#ifndef HILITE_ORACLE_H_
#define HILITE_ORACLE_H_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hilite/corpus.h"
#include "hilite/rouge.h"
#include "hilite/segmenter.h"

namespace hilite {

struct SentenceKey {
  std::string doc_id;
  int sentence_index = 0;

  auto operator<=>(const SentenceKey&) const = default;
};

struct SentenceSelection {
  std::vector<SentenceKey> sentences;  // selection order
  std::vector<double> trace;           // R-2 F after each pick
  double r2_f = 0.0;
};

// Adds, one at a time, the sentence that most raises R-2 F of the growing
// selection (concatenated in selection order, cut to budget_words). Stops when
// no sentence improves the score or the selection already fills the budget.
// Ties go to the earlier sentence in reading order.
SentenceSelection GreedySentenceSelect(const Topic& topic,
                                       const ReferenceSet& references,
                                       int budget_words);

// Index into `candidates` of the highest R-2 F segment; ties prefer more words,
// then the earlier start. std::nullopt for an empty list.
std::optional<std::size_t> BestSegmentPerSentence(
    const Sentence& sentence, std::span<const CandidateSegment> candidates,
    const ReferenceSet& references);

struct OracleResult {
  std::string topic_id;
  SentenceSelection sentences;
  std::vector<SpanRef> segments;  // selection order, within budget
  std::vector<int> segment_ids;
  double segment_r2_f = 0.0;  // R-2 F of the labeled segments together
  std::vector<std::string> warnings;
};

// `candidates` holds the topic's segments, any order. Labeled segments whose
// words would overflow the budget are dropped with a warning.
OracleResult BuildOracleLabels(const Topic& topic,
                               std::span<const CandidateSegment> candidates,
                               const RougeOptions& options);

}  // namespace hilite

#endif  // HILITE_ORACLE_H_
