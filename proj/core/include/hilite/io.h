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

// JSONL files passed between pipeline stages.
//
//   candidates  {"topic_id", "segment_id", "doc_id", "sentence_index", "i",
//                "j", "word_count", "p_start", "p_end", "p_self", "rank",
//                "text"}
//   labels and selections
//               {"topic_id", "segments": [{"doc_id", "sentence_index", "i",
//                "j"}]}
//   parses      {"doc_id", "sentence_index", "parse"}

#ifndef HILITE_IO_H_
#define HILITE_IO_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hilite/corpus.h"
#include "hilite/segmenter.h"

namespace hilite {

struct TopicCandidates {
  std::string topic_id;
  std::vector<CandidateSegment> segments;
};

// `text` is taken from the topic and is informational only on read.
void WriteCandidates(const Topic& topic,
                     std::span<const CandidateSegment> segments,
                     std::ostream& out);
// Grouped by topic in first-appearance order.
std::vector<TopicCandidates> ReadCandidates(std::istream& in,
                                            std::string_view source_name);
std::vector<TopicCandidates> LoadCandidates(const std::filesystem::path& path);

struct SegmentList {
  std::string topic_id;
  std::vector<SpanRef> segments;

  bool operator==(const SegmentList&) const = default;
};

void WriteSegmentList(const SegmentList& list, std::ostream& out);
std::vector<SegmentList> ReadSegmentLists(std::istream& in,
                                          std::string_view source_name);
std::vector<SegmentList> LoadSegmentLists(const std::filesystem::path& path);

// (doc_id, sentence_index) -> bracketed parse.
using ParseMap = std::map<std::pair<std::string, int>, std::string>;

ParseMap ReadParses(std::istream& in, std::string_view source_name);
ParseMap LoadParses(const std::filesystem::path& path);

// Finds the entry for `topic_id`, or nullptr.
const TopicCandidates* FindTopic(std::span<const TopicCandidates> all,
                                 std::string_view topic_id);
const SegmentList* FindTopic(std::span<const SegmentList> all,
                             std::string_view topic_id);

}  // namespace hilite

#endif  // HILITE_IO_H_
