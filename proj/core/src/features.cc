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

#include "hilite/features.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "hilite/error.h"
#include "hilite/scorer.h"
#include "http_client.h"
#include "json.hpp"

namespace hilite {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::vector<std::string> Texts(std::span<const Token> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.text);
  return out;
}

std::vector<std::string> TokenTexts(std::string_view sentence) {
  return Texts(Tokenize(sentence));
}

PyramidPair MakePair(const std::vector<std::vector<std::string>>& article,
                     const std::vector<std::string>& summary, int begin,
                     int end, bool positive) {
  PyramidPair pair;
  pair.summary_sentence = summary;
  pair.positive = positive;
  for (int k = begin; k < end; ++k) {
    if (article[k] == summary) continue;
    pair.paragraph_sentences.push_back(k);
    pair.paragraph.insert(pair.paragraph.end(), article[k].begin(),
                          article[k].end());
  }
  return pair;
}

std::vector<Token> Concat(const Document& doc, std::size_t begin,
                          std::size_t end) {
  std::vector<Token> out;
  for (std::size_t k = begin; k < end; ++k) {
    const auto& toks = doc.sentences[k].tokens;
    out.insert(out.end(), toks.begin(), toks.end());
  }
  return out;
}

std::span<const Token> SegmentTokens(const Sentence& s,
                                     const CandidateSegment& seg) {
  return std::span<const Token>(s.tokens).subspan(
      seg.span.first, seg.span.last - seg.span.first + 1);
}

const Sentence& SentenceOf(const Document& doc, const CandidateSegment& seg) {
  if (seg.sentence_index < 0 ||
      static_cast<std::size_t>(seg.sentence_index) >= doc.sentences.size()) {
    throw Error("segment sentence index " + std::to_string(seg.sentence_index) +
                " outside document " + doc.doc_id);
  }
  const Sentence& s = doc.sentences[seg.sentence_index];
  if (seg.span.first > seg.span.last || seg.span.last >= s.tokens.size()) {
    throw Error("segment span outside sentence " +
                std::to_string(seg.sentence_index) + " of " + doc.doc_id);
  }
  return s;
}

const Document& DocumentOf(const Topic& topic, const CandidateSegment& seg) {
  const Document* doc = topic.FindDocument(seg.doc_id);
  if (doc == nullptr) {
    throw Error("segment refers to unknown document " + seg.doc_id +
                " in topic " + topic.topic_id);
  }
  return *doc;
}

void CheckDim(std::size_t got, int declared) {
  if (got != static_cast<std::size_t>(declared)) {
    throw ConfigError("pyramid service returned a vector of dimension " +
                      std::to_string(got) + ", declared " +
                      std::to_string(declared));
  }
}

// Sparse vector over interned term ids, sorted by id, unit length.
using IdVector = std::vector<std::pair<int, double>>;

IdVector Intern(const SparseVector& v,
                std::unordered_map<std::string, int>& ids) {
  IdVector out;
  out.reserve(v.size());
  double norm = Norm(v);
  for (const auto& [term, x] : v) {
    auto [it, inserted] = ids.emplace(term, static_cast<int>(ids.size()));
    out.emplace_back(it->second, x / norm);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Dot(const IdVector& a, const IdVector& b) {
  double s = 0.0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

}  // namespace

std::vector<PyramidPair> BuildPyramidPairs(
    std::span<const std::string> article_sentences,
    std::span<const std::string> summary_sentences) {
  if (article_sentences.empty()) {
    throw std::invalid_argument("pyramid pairs need a non-empty article");
  }
  std::vector<std::vector<std::string>> article;
  article.reserve(article_sentences.size());
  for (const auto& s : article_sentences) article.push_back(TokenTexts(s));
  const int n = static_cast<int>(article.size());
  const int k = std::min(kLeadSentences, n);

  std::vector<PyramidPair> pairs;
  for (const auto& s : summary_sentences) {
    const auto summary = TokenTexts(s);
    pairs.push_back(MakePair(article, summary, 0, k, true));
    pairs.push_back(MakePair(article, summary, n - k, n, false));
  }
  return pairs;
}

std::vector<Token> LeadTokens(const Document& doc) {
  const std::size_t k =
      std::min<std::size_t>(kLeadSentences, doc.sentences.size());
  return Concat(doc, 0, k);
}

std::vector<Token> BottomTokens(const Document& doc) {
  const std::size_t n = doc.sentences.size();
  const std::size_t k = std::min<std::size_t>(kLeadSentences, n);
  return Concat(doc, n - k, n);
}

Eigen::MatrixXd FallbackPyramidSource::Compute(
    const Topic& topic, std::span<const PyramidQuery> queries) {
  const TfIdfModel tfidf = TfIdfModel::FromTopic(topic);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(queries.size()),
                      kFallbackPyramidDim);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto seg = LowerWords(queries[q].segment);
    const auto r = static_cast<Eigen::Index>(q);
    out(r, 0) = tfidf.CosineOf(seg, LowerWords(queries[q].lead));
    out(r, 1) = tfidf.CosineOf(seg, LowerWords(queries[q].bottom));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Service-backed pyramid features

int DecodePyramidMeta(std::string_view body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("/v1/meta: malformed JSON (") + e.what() +
                      ")");
  }
  if (!doc.is_object() || !doc.contains("pyramid_dim") ||
      !doc["pyramid_dim"].is_number_integer() ||
      doc["pyramid_dim"].get<long long>() <= 0) {
    throw ConfigError("/v1/meta: \"pyramid_dim\" must be a positive integer");
  }
  return doc["pyramid_dim"].get<int>();
}

std::string EncodePyramidRequestBody(std::span<const PyramidQuery> queries,
                                     std::size_t id_offset) {
  ordered_json body;
  body["requests"] = ordered_json::array();
  for (std::size_t k = 0; k < queries.size(); ++k) {
    ordered_json item;
    item["request_id"] = "p" + std::to_string(id_offset + k);
    item["segment_tokens"] = Texts(queries[k].segment);
    item["lead_tokens"] = Texts(queries[k].lead);
    body["requests"].push_back(std::move(item));
  }
  return body.dump();
}

Eigen::MatrixXd DecodePyramidResponseBody(std::string_view body,
                                          std::size_t count,
                                          std::size_t id_offset,
                                          int expected_dim) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(std::string("pyramid response: malformed JSON (") + e.what() +
                ")");
  }
  if (!doc.is_object() || !doc.contains("responses") ||
      !doc["responses"].is_array()) {
    throw Error("pyramid response: missing \"responses\" array");
  }
  std::unordered_map<std::string, std::vector<double>> by_id;
  for (const auto& item : doc["responses"]) {
    std::string id;
    std::vector<double> v;
    try {
      id = item.at("request_id").get<std::string>();
      v = item.at("vector").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw Error(std::string("pyramid response: bad item (") + e.what() + ")");
    }
    CheckDim(v.size(), expected_dim);
    for (double x : v) {
      if (!std::isfinite(x)) {
        throw Error("pyramid response " + id + ": non-finite entry");
      }
    }
    if (!by_id.emplace(id, std::move(v)).second) {
      throw Error("pyramid response: duplicate request_id " + id);
    }
  }
  if (by_id.size() != count) {
    throw Error("pyramid response: expected " + std::to_string(count) +
                " vectors, got " + std::to_string(by_id.size()));
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(count), expected_dim);
  for (std::size_t k = 0; k < count; ++k) {
    const std::string id = "p" + std::to_string(id_offset + k);
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error("pyramid response: no answer for request_id " + id);
    }
    for (int d = 0; d < expected_dim; ++d) {
      out(static_cast<Eigen::Index>(k), d) = it->second[d];
    }
  }
  return out;
}

HttpPyramidSource::HttpPyramidSource(std::string endpoint, int batch_size,
                                     int timeout_seconds)
    : endpoint_(ResolveScorerEndpoint(std::move(endpoint))),
      batch_size_(batch_size),
      timeout_seconds_(timeout_seconds) {
  if (batch_size_ < 1) throw ConfigError("pyramid batch size must be >= 1");
  dim_ = DecodePyramidMeta(
      internal::GetJson(endpoint_, "/v1/meta", timeout_seconds_));
}

Eigen::MatrixXd HttpPyramidSource::Compute(
    const Topic& /*topic*/, std::span<const PyramidQuery> queries) {
  // The declared dimension may not drift while a model is being built.
  const int declared = DecodePyramidMeta(
      internal::GetJson(endpoint_, "/v1/meta", timeout_seconds_));
  if (declared != dim_) {
    throw ConfigError("pyramid service dimension changed from " +
                      std::to_string(dim_) + " to " + std::to_string(declared));
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(queries.size()), dim_);
  for (std::size_t start = 0; start < queries.size();
       start += static_cast<std::size_t>(batch_size_)) {
    const std::size_t count =
        std::min(queries.size() - start, static_cast<std::size_t>(batch_size_));
    const auto batch = queries.subspan(start, count);
    const std::string reply =
        internal::PostJson(endpoint_, "/v1/pyramid",
                           EncodePyramidRequestBody(batch, start),
                           timeout_seconds_);
    out.middleRows(static_cast<Eigen::Index>(start),
                   static_cast<Eigen::Index>(count)) =
        DecodePyramidResponseBody(reply, count, start, dim_);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Surface features and similarity

std::array<double, kSurfaceFeatureCount> SurfaceFeatures(
    const CandidateSegment& segment, const Document& doc,
    const TfIdfModel& tfidf, int budget_words) {
  if (budget_words <= 0) throw Error("word budget must be positive");
  const Sentence& s = SentenceOf(doc, segment);
  const int words_before =
      segment.span.first == 0 ? 0
                              : s.WordCount(0, segment.span.first - 1);
  const int sentence_words = std::max(1, s.WordCount());
  const int seg_words = s.WordCount(segment.span.first, segment.span.last);

  std::vector<std::string> doc_words;
  for (const auto& sent : doc.sentences) {
    auto w = LowerWords(sent.tokens);
    doc_words.insert(doc_words.end(), w.begin(), w.end());
  }
  return {
      static_cast<double>(seg_words) / budget_words,
      static_cast<double>(segment.sentence_index) /
          static_cast<double>(doc.sentences.size()),
      static_cast<double>(words_before) / sentence_words,
      tfidf.CosineOf(LowerWords(SegmentTokens(s, segment)), doc_words),
  };
}

Eigen::MatrixXd BuildFeatures(const Topic& topic,
                              std::span<const CandidateSegment> segments,
                              PyramidSource& pyramid) {
  const TfIdfModel tfidf = TfIdfModel::FromTopic(topic);
  std::vector<PyramidQuery> queries;
  queries.reserve(segments.size());
  for (const auto& seg : segments) {
    const Document& doc = DocumentOf(topic, seg);
    const Sentence& s = SentenceOf(doc, seg);
    auto toks = SegmentTokens(s, seg);
    queries.push_back(PyramidQuery{{toks.begin(), toks.end()},
                                   LeadTokens(doc),
                                   BottomTokens(doc)});
  }
  const int dp = pyramid.dim();
  const Eigen::MatrixXd pyr = pyramid.Compute(topic, queries);
  if (pyr.rows() != static_cast<Eigen::Index>(segments.size()) ||
      pyr.cols() != dp) {
    throw ConfigError("pyramid features have shape " +
                      std::to_string(pyr.rows()) + "x" +
                      std::to_string(pyr.cols()) + ", expected " +
                      std::to_string(segments.size()) + "x" +
                      std::to_string(dp));
  }

  Eigen::MatrixXd f(static_cast<Eigen::Index>(segments.size()), FeatureDim(dp));
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    f.row(r).head(dp) = pyr.row(r);
    const auto surface = SurfaceFeatures(
        segments[k], DocumentOf(topic, segments[k]), tfidf, topic.budget_words);
    for (int d = 0; d < kSurfaceFeatureCount; ++d) f(r, dp + d) = surface[d];
    f(r, dp + kSurfaceFeatureCount) = 1.0;
  }
  if (!f.allFinite()) throw NumericalError("non-finite feature value");
  return f;
}

Eigen::MatrixXd SimilarityMatrix(const Topic& topic,
                                 std::span<const CandidateSegment> segments,
                                 const TfIdfModel& tfidf) {
  const auto n = static_cast<Eigen::Index>(segments.size());
  std::unordered_map<std::string, int> ids;
  std::vector<IdVector> rows;
  rows.reserve(segments.size());
  for (const auto& seg : segments) {
    const Sentence& s = SentenceOf(DocumentOf(topic, seg), seg);
    const auto words = LowerWords(SegmentTokens(s, seg));
    std::vector<std::string> content;
    for (const auto& w : words) {
      if (!IsStopword(w)) content.push_back(w);
    }
    SparseVector v = tfidf.WeightOrCounts(TermCounts(content));
    if (v.empty()) v = TermCounts(words);
    rows.push_back(v.empty() ? IdVector{} : Intern(v, ids));
  }

  Eigen::MatrixXd S = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double c = std::clamp(Dot(rows[i], rows[j]), -1.0, 1.0);
      S(i, j) = c;
      S(j, i) = c;
    }
  }
  return S;
}

}  // namespace hilite
