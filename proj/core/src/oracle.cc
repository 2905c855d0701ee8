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

#include "hilite/oracle.h"

#include <map>
#include <stdexcept>

#include "hilite/error.h"

namespace hilite {
namespace {

RougeOptions Untruncated(RougeOptions o) {
  o.limit_words = 0;
  return o;
}

Words Cut(Words w, int budget) {
  if (budget > 0 && static_cast<int>(w.size()) > budget) w.resize(budget);
  return w;
}

Words SpanWords(const Sentence& s, TokenSpan span, const RougeOptions& o) {
  return RougeWords(std::span<const Token>(s.tokens).subspan(
                        span.first, span.last - span.first + 1),
                    Untruncated(o));
}

}  // namespace

SentenceSelection GreedySentenceSelect(const Topic& topic,
                                       const ReferenceSet& references,
                                       int budget_words) {
  if (budget_words <= 0) throw std::invalid_argument("budget must be positive");
  const RougeOptions opts = Untruncated(references.options());

  struct Item {
    SentenceKey key;
    Words words;
  };
  std::vector<Item> items;
  for (const auto& doc : topic.documents) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      items.push_back(Item{SentenceKey{doc.doc_id, static_cast<int>(s)},
                           RougeWords(doc.sentences[s].tokens, opts)});
    }
  }

  SentenceSelection out;
  std::vector<bool> used(items.size(), false);
  Words current;
  double score = 0.0;
  while (static_cast<int>(current.size()) < budget_words) {
    std::size_t best = items.size();
    double best_score = score;
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (used[k]) continue;
      Words trial = current;
      trial.insert(trial.end(), items[k].words.begin(), items[k].words.end());
      const double f = references.R2Words(Cut(std::move(trial), budget_words)).f;
      if (f > best_score) {
        best = k;
        best_score = f;
      }
    }
    if (best == items.size()) break;
    used[best] = true;
    current.insert(current.end(), items[best].words.begin(),
                   items[best].words.end());
    score = best_score;
    out.sentences.push_back(items[best].key);
    out.trace.push_back(score);
  }
  out.r2_f = score;
  return out;
}

std::optional<std::size_t> BestSegmentPerSentence(
    const Sentence& sentence, std::span<const CandidateSegment> candidates,
    const ReferenceSet& references) {
  std::optional<std::size_t> best;
  double best_f = 0.0;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto& c = candidates[k];
    if (c.span.last >= sentence.tokens.size() || c.span.first > c.span.last) {
      throw Error("candidate span outside sentence " +
                  std::to_string(c.sentence_index) + " of " + c.doc_id);
    }
    const double f =
        references.R2Words(SpanWords(sentence, c.span, references.options())).f;
    bool better = !best.has_value() || f > best_f;
    if (!better && f == best_f) {
      const auto& b = candidates[*best];
      better = c.word_count > b.word_count ||
               (c.word_count == b.word_count && c.span.first < b.span.first);
    }
    if (better) {
      best = k;
      best_f = f;
    }
  }
  return best;
}

OracleResult BuildOracleLabels(const Topic& topic,
                               std::span<const CandidateSegment> candidates,
                               const RougeOptions& options) {
  if (topic.references.empty()) {
    throw Error("topic " + topic.topic_id + " has no reference summaries");
  }
  const ReferenceSet refs(topic.references, options);
  OracleResult out;
  out.topic_id = topic.topic_id;
  out.sentences = GreedySentenceSelect(topic, refs, topic.budget_words);

  std::map<SentenceKey, std::vector<CandidateSegment>> by_sentence;
  for (const auto& c : candidates) {
    by_sentence[SentenceKey{c.doc_id, c.sentence_index}].push_back(c);
  }

  int words = 0;
  Words label_words;
  for (const auto& key : out.sentences.sentences) {
    const std::string where =
        key.doc_id + " sentence " + std::to_string(key.sentence_index);
    auto it = by_sentence.find(key);
    if (it == by_sentence.end() || it->second.empty()) {
      out.warnings.push_back("no candidate segments for " + where +
                             "; sentence skipped");
      continue;
    }
    const Document* doc = topic.FindDocument(key.doc_id);
    const Sentence& sentence = doc->sentences[key.sentence_index];
    const auto pick = BestSegmentPerSentence(sentence, it->second, refs);
    const CandidateSegment& seg = it->second[*pick];
    if (words + seg.word_count > topic.budget_words) {
      out.warnings.push_back("segment from " + where + " (" +
                             std::to_string(seg.word_count) +
                             " words) exceeds the remaining budget; dropped");
      continue;
    }
    words += seg.word_count;
    out.segments.push_back(seg.ref());
    out.segment_ids.push_back(seg.segment_id);
    const Words w = SpanWords(sentence, seg.span, options);
    label_words.insert(label_words.end(), w.begin(), w.end());
  }
  out.segment_r2_f = out.segments.empty() ? 0.0 : refs.R2Words(label_words).f;
  return out;
}

}  // namespace hilite
