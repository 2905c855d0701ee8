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

// Quality features and pairwise similarity for DPP ground sets.
//
// Feature row layout, one row per segment:
//
//   [ pyramid (pyramid_dim) | length | doc position | sentence position |
//     cos(segment, document) | bias = 1 ]
//
// "pyramid" features measure how much a segment resembles the lead of its
// article as opposed to the bottom. They come either from the scoring
// service's classifier (/v1/pyramid) or, offline, from two TF-IDF cosines.

#ifndef HILITE_FEATURES_H_
#define HILITE_FEATURES_H_

#include <Eigen/Core>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hilite/corpus.h"
#include "hilite/segmenter.h"
#include "hilite/tfidf.h"

namespace hilite {

inline constexpr int kLeadSentences = 5;
inline constexpr int kSurfaceFeatureCount = 4;
inline constexpr int kFallbackPyramidDim = 2;

// Total row width for a given pyramid dimension: surface features and bias
// are appended.
constexpr int FeatureDim(int pyramid_dim) {
  return pyramid_dim + kSurfaceFeatureCount + 1;
}

// Training pairs for the lead-vs-bottom classifier.
struct PyramidPair {
  std::vector<std::string> summary_sentence;  // token texts
  std::vector<std::string> paragraph;         // token texts
  std::vector<int> paragraph_sentences;       // article indices used
  bool positive = false;

  bool operator==(const PyramidPair&) const = default;
};

// One positive (lead) and one negative (bottom) pair per summary sentence.
// The lead is the first min(5, n) article sentences and the bottom the last
// min(5, n); an article sentence identical to the summary sentence (token by
// token) is left out of the paragraph. Throws std::invalid_argument on an
// empty article.
std::vector<PyramidPair> BuildPyramidPairs(
    std::span<const std::string> article_sentences,
    std::span<const std::string> summary_sentences);

struct PyramidQuery {
  std::vector<Token> segment;
  std::vector<Token> lead;
  std::vector<Token> bottom;
};

// Lead and bottom paragraphs of a document, as concatenated tokens.
std::vector<Token> LeadTokens(const Document& doc);
std::vector<Token> BottomTokens(const Document& doc);

class PyramidSource {
 public:
  virtual ~PyramidSource() = default;
  virtual int dim() const = 0;
  // One row of dim() values per query.
  virtual Eigen::MatrixXd Compute(const Topic& topic,
                                  std::span<const PyramidQuery> queries) = 0;
  virtual std::string name() const = 0;
};

// [cos(segment, lead), cos(segment, bottom)] under the topic's TF-IDF.
class FallbackPyramidSource : public PyramidSource {
 public:
  int dim() const override { return kFallbackPyramidDim; }
  Eigen::MatrixXd Compute(const Topic& topic,
                          std::span<const PyramidQuery> queries) override;
  std::string name() const override { return "fallback"; }
};

class HttpPyramidSource : public PyramidSource {
 public:
  // Reads the dimension from GET /v1/meta. `endpoint` goes through
  // ResolveScorerEndpoint. Throws TransportError or ConfigError.
  explicit HttpPyramidSource(std::string endpoint, int batch_size = 64,
                             int timeout_seconds = 60);

  int dim() const override { return dim_; }
  // Throws ConfigError when the service answers with a vector whose length
  // differs from the declared dimension.
  Eigen::MatrixXd Compute(const Topic& topic,
                          std::span<const PyramidQuery> queries) override;
  std::string name() const override { return "service"; }

 private:
  std::string endpoint_;
  int batch_size_;
  int timeout_seconds_;
  int dim_ = 0;
};

// Wire helpers for the pyramid endpoints.
int DecodePyramidMeta(std::string_view body);
std::string EncodePyramidRequestBody(std::span<const PyramidQuery> queries,
                                     std::size_t id_offset = 0);
// Rows in query order; ids are "p<offset + k>".
Eigen::MatrixXd DecodePyramidResponseBody(std::string_view body,
                                          std::size_t count,
                                          std::size_t id_offset,
                                          int expected_dim);

// [word_count / budget, sentence_index / sentences, first word index /
//  sentence words, cos(segment, document)].
std::array<double, kSurfaceFeatureCount> SurfaceFeatures(
    const CandidateSegment& segment, const Document& doc,
    const TfIdfModel& tfidf, int budget_words);

// Feature rows for every segment, with the layout described above.
Eigen::MatrixXd BuildFeatures(const Topic& topic,
                              std::span<const CandidateSegment> segments,
                              PyramidSource& pyramid);

// S_ij = cosine of TF-IDF unit vectors over non-stopwords. A segment with no
// content words falls back to raw counts of all its words; a segment with no
// words at all is orthogonal to everything. The result is a Gram matrix of
// unit vectors, hence symmetric PSD with unit diagonal.
Eigen::MatrixXd SimilarityMatrix(const Topic& topic,
                                 std::span<const CandidateSegment> segments,
                                 const TfIdfModel& tfidf);

}  // namespace hilite

#endif  // HILITE_FEATURES_H_
