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

// Self-containedness scores for candidate spans.
//
// A span x[i..j] is scored by two probabilities: that an end-of-sentence
// marker could precede it (p_start) and follow it (p_end). Three interchangeable
// sources provide them:
//
//   ScoreFileSource      precomputed JSONL keyed by (doc_id, sentence, i, j)
//   HttpScoreSource      the scoring service's POST /v1/score
//   FallbackScoreSource  unigram boundary statistics counted from the corpus;
//                        an offline stand-in, not a language model
//
// Every source returns one response per request, in request order.

#ifndef HILITE_SCORER_H_
#define HILITE_SCORER_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hilite/corpus.h"

namespace hilite {

struct ScoreRequest {
  std::string request_id;
  SpanRef key;                      // score-file key; also names the span
  std::vector<std::string> tokens;  // full sentence token texts
};

struct ScoreResponse {
  std::string request_id;
  double p_start = 0.0;
  double p_end = 0.0;

  double p_self() const { return 0.5 * (p_start + p_end); }
  bool operator==(const ScoreResponse&) const = default;
};

// Throws std::invalid_argument unless 0 <= i <= j < tokens.size().
void ValidateRequest(const ScoreRequest& request);

class ScoreSource {
 public:
  virtual ~ScoreSource() = default;
  virtual std::vector<ScoreResponse> Score(
      std::span<const ScoreRequest> requests) const = 0;
  virtual std::string name() const = 0;
};

class ScoreFileSource : public ScoreSource {
 public:
  struct Entry {
    double p_start = 0.0;
    double p_end = 0.0;
  };

  explicit ScoreFileSource(std::map<SpanRef, Entry> entries);
  static ScoreFileSource Load(const std::filesystem::path& path);
  static ScoreFileSource Read(std::istream& in, std::string_view source_name);

  // Throws hilite::Error listing the first ten missing keys.
  std::vector<ScoreResponse> Score(
      std::span<const ScoreRequest> requests) const override;
  std::string name() const override { return "file"; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<SpanRef, Entry> entries_;
};

// Writes requests and their responses in the score-file schema.
void WriteScoreFile(std::span<const ScoreRequest> requests,
                    std::span<const ScoreResponse> responses,
                    std::ostream& out);

class FallbackBoundaryModel {
 public:
  struct Counts {
    long hits = 0;
    long total = 0;
    bool operator==(const Counts&) const = default;
  };
  using CountMap = std::unordered_map<std::string, Counts>;

  // start_counts[w] counts occurrences of w that open a sentence or follow
  // a period, exclamation mark, question mark or comma.
  // end_counts[w] counts occurrences directly before a period or comma.
  // Throws hilite::Error on an empty corpus or non-positive alpha.
  static FallbackBoundaryModel Train(std::span<const Topic> corpus,
                                     double alpha);

  FallbackBoundaryModel(CountMap start_counts, CountMap end_counts,
                        double alpha);

  // (hits + alpha) / (total + 2 alpha) with w lowercased; 0.5 for unseen w.
  double StartProbability(std::string_view word) const;
  double EndProbability(std::string_view word) const;

  const CountMap& start_counts() const { return start_counts_; }
  const CountMap& end_counts() const { return end_counts_; }
  double alpha() const { return alpha_; }

 private:
  double Smoothed(const CountMap& counts, std::string_view word) const;

  CountMap start_counts_;
  CountMap end_counts_;
  double alpha_;
};

class FallbackScoreSource : public ScoreSource {
 public:
  explicit FallbackScoreSource(FallbackBoundaryModel model)
      : model_(std::move(model)) {}

  std::vector<ScoreResponse> Score(
      std::span<const ScoreRequest> requests) const override;
  std::string name() const override { return "fallback"; }
  const FallbackBoundaryModel& model() const { return model_; }

 private:
  FallbackBoundaryModel model_;
};

inline constexpr const char* kScorerUrlEnv = "HILITE_SCORER_URL";

// HILITE_SCORER_URL when set and non-empty, else `configured`.
std::string ResolveScorerEndpoint(std::string configured);

struct HttpScorerOptions {
  int batch_size = 64;
  int max_in_flight = 1;
  int timeout_seconds = 60;
};

class HttpScoreSource : public ScoreSource {
 public:
  // `endpoint` is a base URL such as "http://127.0.0.1:8080"; it is passed
  // through ResolveScorerEndpoint.
  explicit HttpScoreSource(std::string endpoint, HttpScorerOptions options = {});

  // Throws TransportError on connection failure or non-2xx, hilite::Error on
  // a malformed or incomplete response body.
  std::vector<ScoreResponse> Score(
      std::span<const ScoreRequest> requests) const override;
  std::string name() const override { return "http"; }
  const std::string& endpoint() const { return endpoint_; }

 private:
  std::string endpoint_;
  HttpScorerOptions options_;
};

// Wire helpers, shared with tests that play the service side.
std::string EncodeScoreRequestBody(std::span<const ScoreRequest> requests);
// Returns responses reordered to match `requests`.
std::vector<ScoreResponse> DecodeScoreResponseBody(
    std::string_view body, std::span<const ScoreRequest> requests);

}  // namespace hilite

#endif  // HILITE_SCORER_H_
