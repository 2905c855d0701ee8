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

#include "hilite/pipeline.h"

#include <map>
#include <tuple>

#include "hilite/error.h"
#include "hilite/parse_tree.h"
#include "hilite/tfidf.h"

namespace hilite {
namespace {

std::vector<std::string> TokenTexts(const Sentence& s) {
  std::vector<std::string> out;
  out.reserve(s.tokens.size());
  for (const auto& t : s.tokens) out.push_back(t.text);
  return out;
}

// Sorts into document order and numbers the segments.
void Finalize(const Topic& topic, std::vector<CandidateSegment>& segs) {
  std::map<std::string, int, std::less<>> doc_index;
  for (std::size_t d = 0; d < topic.documents.size(); ++d) {
    doc_index[topic.documents[d].doc_id] = static_cast<int>(d);
  }
  auto key = [&](const CandidateSegment& c) {
    return std::tuple(doc_index.at(c.doc_id), c.sentence_index, c.span);
  };
  std::stable_sort(segs.begin(), segs.end(),
                   [&](const CandidateSegment& a, const CandidateSegment& b) {
                     return key(a) < key(b);
                   });
  for (std::size_t k = 0; k < segs.size(); ++k) {
    segs[k].segment_id = static_cast<int>(k);
  }
}

std::string SentenceName(const std::string& doc_id, std::size_t s) {
  return doc_id + " sentence " + std::to_string(s);
}

}  // namespace

std::vector<ScoreRequest> CandidateRequests(const Topic& topic,
                                            const SegmenterConfig& config) {
  std::vector<ScoreRequest> out;
  for (const auto& doc : topic.documents) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const Sentence& sent = doc.sentences[s];
      const auto texts = TokenTexts(sent);
      for (const auto& chunk : sent.chunks) {
        for (const auto& span :
             EnumerateCandidates(sent, chunk, config.min_words)) {
          out.push_back(ScoreRequest{
              "r" + std::to_string(out.size()),
              SpanRef{doc.doc_id, static_cast<int>(s), span.first, span.last},
              texts});
        }
      }
    }
  }
  return out;
}

std::vector<CandidateSegment> SegmentTopic(const Topic& topic,
                                           const ScoreSource& scores,
                                           const SegmenterConfig& config) {
  if (config.max_per_sentence < 1) {
    throw ConfigError("max_per_sentence must be >= 1");
  }
  const auto requests = CandidateRequests(topic, config);
  const auto responses = scores.Score(requests);
  if (responses.size() != requests.size()) {
    throw Error("score source " + scores.name() + " returned " +
                std::to_string(responses.size()) + " responses for " +
                std::to_string(requests.size()) + " requests");
  }

  std::vector<CandidateSegment> out;
  std::size_t k = 0;
  for (const auto& doc : topic.documents) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const Sentence& sent = doc.sentences[s];
      std::vector<CandidateSegment> kept;
      for (const auto& chunk : sent.chunks) {
        std::vector<CandidateSegment> pool;
        for (const auto& span :
             EnumerateCandidates(sent, chunk, config.min_words)) {
          const ScoreResponse& r = responses[k++];
          CandidateSegment c;
          c.doc_id = doc.doc_id;
          c.sentence_index = static_cast<int>(s);
          c.span = span;
          c.word_count = sent.WordCount(span.first, span.last);
          c.p_start = r.p_start;
          c.p_end = r.p_end;
          c.p_self = r.p_self();
          pool.push_back(std::move(c));
        }
        auto survivors = QuartileFilter(pool);
        kept.insert(kept.end(), survivors.begin(), survivors.end());
      }
      std::stable_sort(kept.begin(), kept.end(), RanksBefore);
      if (kept.size() > static_cast<std::size_t>(config.max_per_sentence)) {
        kept.resize(config.max_per_sentence);
      }
      for (std::size_t r = 0; r < kept.size(); ++r) {
        kept[r].rank = static_cast<int>(r);
      }
      out.insert(out.end(), kept.begin(), kept.end());
    }
  }
  Finalize(topic, out);
  return out;
}

std::vector<CandidateSegment> TreeSegmentTopic(const Topic& topic,
                                               const ParseMap& parses,
                                               const SegmenterConfig& config) {
  std::vector<CandidateSegment> out;
  for (const auto& doc : topic.documents) {
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const Sentence& sent = doc.sentences[s];
      if (sent.WordCount() < config.min_words) continue;
      const std::string name = SentenceName(doc.doc_id, s);
      auto it = parses.find({doc.doc_id, static_cast<int>(s)});
      if (it == parses.end()) throw Error("no parse for " + name);
      const ParseTree tree = ParseBracketed(it->second);
      const auto spans = ExtractTreeSegments(
          tree, sent, config.min_words, config.max_per_sentence, name);
      for (std::size_t r = 0; r < spans.size(); ++r) {
        CandidateSegment c;
        c.doc_id = doc.doc_id;
        c.sentence_index = static_cast<int>(s);
        c.span = spans[r];
        c.word_count = sent.WordCount(spans[r].first, spans[r].last);
        c.rank = static_cast<int>(r);
        out.push_back(std::move(c));
      }
    }
  }
  Finalize(topic, out);
  return out;
}

std::vector<int> LabelIndices(std::span<const CandidateSegment> segments,
                              std::span<const SpanRef> labels,
                              std::string_view topic_id) {
  std::map<SpanRef, int> index;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    index.emplace(segments[k].ref(), static_cast<int>(k));
  }
  std::vector<int> out;
  for (const auto& l : labels) {
    auto it = index.find(l);
    if (it == index.end()) {
      throw Error("label (" + l.doc_id + ", " +
                  std::to_string(l.sentence_index) + ", " +
                  std::to_string(l.first) + ", " + std::to_string(l.last) +
                  ") in topic " + std::string(topic_id) +
                  " is not a candidate segment");
    }
    out.push_back(it->second);
  }
  return out;
}

dpp::Instance BuildInstance(const Topic& topic,
                            std::span<const CandidateSegment> segments,
                            std::span<const SpanRef> labels,
                            PyramidSource& pyramid) {
  dpp::Instance inst;
  inst.id = topic.topic_id;
  inst.features = BuildFeatures(topic, segments, pyramid);
  inst.similarity =
      SimilarityMatrix(topic, segments, TfIdfModel::FromTopic(topic));
  inst.selected = LabelIndices(segments, labels, topic.topic_id);
  return inst;
}

Summary Summarize(const Topic& topic, std::span<const CandidateSegment> segments,
                  const dpp::QualityModel& model, PyramidSource& pyramid,
                  dpp::MapOptions options) {
  if (model.pyramid_dim() != pyramid.dim()) {
    throw ConfigError("model was trained with pyramid_dim " +
                      std::to_string(model.pyramid_dim()) + ", the " +
                      pyramid.name() + " pyramid source provides " +
                      std::to_string(pyramid.dim()));
  }
  const Eigen::MatrixXd f = BuildFeatures(topic, segments, pyramid);
  const Eigen::MatrixXd s =
      SimilarityMatrix(topic, segments, TfIdfModel::FromTopic(topic));
  const Eigen::MatrixXd l = dpp::BuildEnsemble(model.Quality(f), s);
  std::vector<int> words;
  words.reserve(segments.size());
  for (const auto& c : segments) words.push_back(c.word_count);
  const dpp::MapResult map = dpp::MapSelect(l, words, topic.budget_words, options);

  Summary out;
  for (int k : map.selected) out.segments.push_back(segments[k].ref());
  out.gains = map.gains;
  out.words = map.words;
  return out;
}

CorpusStats ComputeStats(std::span<const Topic> topics,
                         std::span<const TopicCandidates> candidates) {
  CorpusStats st;
  st.topics = static_cast<int>(topics.size());
  for (const auto& t : topics) {
    st.documents += static_cast<int>(t.documents.size());
    for (const auto& d : t.documents) {
      st.sentences += static_cast<int>(d.sentences.size());
      st.words += d.WordCount();
    }
  }
  for (const auto& tc : candidates) {
    st.segments += static_cast<int>(tc.segments.size());
    for (const auto& c : tc.segments) st.segment_words += c.word_count;
  }
  if (st.segments > 0) {
    st.words_per_segment =
        static_cast<double>(st.segment_words) / st.segments;
  }
  if (st.sentences > 0) {
    st.segments_per_sentence =
        static_cast<double>(st.segments) / st.sentences;
  }
  return st;
}

}  // namespace hilite
