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

#include "hilite/io.h"

#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

#include "hilite/error.h"
#include "json.hpp"

namespace hilite {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Calls fn(obj, where) for every non-blank line.
void ForEachObject(std::istream& in, std::string_view source_name,
                   const std::function<void(const json&, const std::string&)>& fn) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where =
        std::string(source_name) + ":" + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(where + ": malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object()) throw ParseError(where + ": expected a JSON object");
    try {
      fn(obj, where);
    } catch (const json::exception& e) {
      throw ParseError(where + ": bad field (" + e.what() + ")");
    }
  }
}

const json& Field(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    throw ParseError(where + ": missing required field \"" + name + "\"");
  }
  return *it;
}

SpanRef ReadSpanRef(const json& obj, const std::string& where) {
  SpanRef r;
  r.doc_id = Field(obj, "doc_id", where).get<std::string>();
  r.sentence_index = Field(obj, "sentence_index", where).get<int>();
  r.first = Field(obj, "i", where).get<std::size_t>();
  r.last = Field(obj, "j", where).get<std::size_t>();
  if (r.first > r.last) throw ParseError(where + ": span has i > j");
  return r;
}

std::ifstream Open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

void WriteCandidates(const Topic& topic,
                     std::span<const CandidateSegment> segments,
                     std::ostream& out) {
  for (const auto& c : segments) {
    const Sentence& s = topic.Resolve(c.ref());
    ordered_json obj;
    obj["topic_id"] = topic.topic_id;
    obj["segment_id"] = c.segment_id;
    obj["doc_id"] = c.doc_id;
    obj["sentence_index"] = c.sentence_index;
    obj["i"] = c.span.first;
    obj["j"] = c.span.last;
    obj["word_count"] = c.word_count;
    obj["p_start"] = c.p_start;
    obj["p_end"] = c.p_end;
    obj["p_self"] = c.p_self;
    obj["rank"] = c.rank;
    obj["text"] = std::string(s.SpanText(c.span.first, c.span.last));
    out << obj.dump() << "\n";
  }
}

std::vector<TopicCandidates> ReadCandidates(std::istream& in,
                                            std::string_view source_name) {
  std::vector<TopicCandidates> out;
  std::map<std::string, std::size_t> index;
  ForEachObject(in, source_name, [&](const json& obj, const std::string& where) {
    const auto topic_id = Field(obj, "topic_id", where).get<std::string>();
    const SpanRef r = ReadSpanRef(obj, where);
    CandidateSegment c;
    c.segment_id = Field(obj, "segment_id", where).get<int>();
    c.doc_id = r.doc_id;
    c.sentence_index = r.sentence_index;
    c.span = TokenSpan{r.first, r.last};
    c.word_count = Field(obj, "word_count", where).get<int>();
    c.p_start = Field(obj, "p_start", where).get<double>();
    c.p_end = Field(obj, "p_end", where).get<double>();
    c.p_self = obj.contains("p_self") ? obj["p_self"].get<double>()
                                      : 0.5 * (c.p_start + c.p_end);
    c.rank = obj.contains("rank") ? obj["rank"].get<int>() : 0;
    auto [it, inserted] = index.emplace(topic_id, out.size());
    if (inserted) out.push_back(TopicCandidates{topic_id, {}});
    out[it->second].segments.push_back(std::move(c));
  });
  return out;
}

std::vector<TopicCandidates> LoadCandidates(const std::filesystem::path& path) {
  auto in = Open(path);
  return ReadCandidates(in, path.string());
}

void WriteSegmentList(const SegmentList& list, std::ostream& out) {
  ordered_json obj;
  obj["topic_id"] = list.topic_id;
  obj["segments"] = ordered_json::array();
  for (const auto& r : list.segments) {
    ordered_json s;
    s["doc_id"] = r.doc_id;
    s["sentence_index"] = r.sentence_index;
    s["i"] = r.first;
    s["j"] = r.last;
    obj["segments"].push_back(std::move(s));
  }
  out << obj.dump() << "\n";
}

std::vector<SegmentList> ReadSegmentLists(std::istream& in,
                                          std::string_view source_name) {
  std::vector<SegmentList> out;
  ForEachObject(in, source_name, [&](const json& obj, const std::string& where) {
    SegmentList list;
    list.topic_id = Field(obj, "topic_id", where).get<std::string>();
    const json& segs = Field(obj, "segments", where);
    if (!segs.is_array()) {
      throw ParseError(where + ": field \"segments\" must be an array");
    }
    for (const auto& s : segs) list.segments.push_back(ReadSpanRef(s, where));
    for (const auto& prev : out) {
      if (prev.topic_id == list.topic_id) {
        throw ParseError(where + ": duplicate topic_id " + list.topic_id);
      }
    }
    out.push_back(std::move(list));
  });
  return out;
}

std::vector<SegmentList> LoadSegmentLists(const std::filesystem::path& path) {
  auto in = Open(path);
  return ReadSegmentLists(in, path.string());
}

ParseMap ReadParses(std::istream& in, std::string_view source_name) {
  ParseMap out;
  ForEachObject(in, source_name, [&](const json& obj, const std::string& where) {
    auto key = std::pair{Field(obj, "doc_id", where).get<std::string>(),
                         Field(obj, "sentence_index", where).get<int>()};
    auto parse = Field(obj, "parse", where).get<std::string>();
    if (!out.emplace(std::move(key), std::move(parse)).second) {
      throw ParseError(where + ": duplicate parse for a sentence");
    }
  });
  return out;
}

ParseMap LoadParses(const std::filesystem::path& path) {
  auto in = Open(path);
  return ReadParses(in, path.string());
}

const TopicCandidates* FindTopic(std::span<const TopicCandidates> all,
                                 std::string_view topic_id) {
  for (const auto& t : all) {
    if (t.topic_id == topic_id) return &t;
  }
  return nullptr;
}

const SegmentList* FindTopic(std::span<const SegmentList> all,
                             std::string_view topic_id) {
  for (const auto& t : all) {
    if (t.topic_id == topic_id) return &t;
  }
  return nullptr;
}

}  // namespace hilite
