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

// Stage functions shared by the command-line tool and the tests.

#ifndef HILITE_PIPELINE_H_
#define HILITE_PIPELINE_H_

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "hilite/corpus.h"
#include "hilite/dpp.h"
#include "hilite/features.h"
#include "hilite/io.h"
#include "hilite/scorer.h"
#include "hilite/segmenter.h"

namespace hilite {

struct SegmenterConfig {
  int min_words = kDefaultMinWords;
  int max_per_sentence = kDefaultMaxPerSentence;
};

// One request per enumerated span of every chunk, ids "r0", "r1", ... in
// (document, sentence, chunk, start, end) order.
std::vector<ScoreRequest> CandidateRequests(const Topic& topic,
                                            const SegmenterConfig& config);

// Enumerate, score, quartile-filter per chunk, keep the best
// max_per_sentence per sentence. The result is in document order with
// segment_id equal to the position and rank the order within its sentence.
std::vector<CandidateSegment> SegmentTopic(const Topic& topic,
                                           const ScoreSource& scores,
                                           const SegmenterConfig& config);

// Tree-segment baseline. Every sentence with at least min_words words needs
// a parse; p_start, p_end and p_self are left at 0.
std::vector<CandidateSegment> TreeSegmentTopic(const Topic& topic,
                                               const ParseMap& parses,
                                               const SegmenterConfig& config);

// Positions in `segments` of each labeled span. Throws hilite::Error for a
// label that is not a candidate.
std::vector<int> LabelIndices(std::span<const CandidateSegment> segments,
                              std::span<const SpanRef> labels,
                              std::string_view topic_id);

dpp::Instance BuildInstance(const Topic& topic,
                            std::span<const CandidateSegment> segments,
                            std::span<const SpanRef> labels,
                            PyramidSource& pyramid);

struct Summary {
  std::vector<SpanRef> segments;  // selection order
  std::vector<double> gains;
  int words = 0;
};

// Greedy MAP selection over the topic's candidates under its word budget.
// Throws ConfigError when the model's width disagrees with the features.
Summary Summarize(const Topic& topic, std::span<const CandidateSegment> segments,
                  const dpp::QualityModel& model, PyramidSource& pyramid,
                  dpp::MapOptions options = {});

struct CorpusStats {
  int topics = 0;
  int documents = 0;
  int sentences = 0;
  long words = 0;  // document words
  int segments = 0;
  long segment_words = 0;
  double words_per_segment = 0.0;      // segment_words / segments
  double segments_per_sentence = 0.0;  // segments / sentences
};

CorpusStats ComputeStats(std::span<const Topic> topics,
                         std::span<const TopicCandidates> candidates);

// Runs fn(0..n-1) on up to `jobs` threads. Results must be written by index,
// so output order never depends on scheduling. The first exception thrown is
// rethrown after all workers stop.
inline void ParallelFor(std::size_t n, int jobs,
                        const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed = true;
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace hilite

#endif  // HILITE_PIPELINE_H_
