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

#include "hilite/scorer.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hilite/error.h"
#include "json.hpp"

namespace hilite {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string KeyString(const SpanRef& key) {
  std::ostringstream os;
  os << "(" << key.doc_id << ", " << key.sentence_index << ", " << key.first
     << ", " << key.last << ")";
  return os.str();
}

bool IsProbability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

bool IsStartContext(const std::string& t) {
  return t == "." || t == "!" || t == "?" || t == ",";
}

bool IsEndContext(const std::string& t) { return t == "." || t == ","; }

}  // namespace

void ValidateRequest(const ScoreRequest& request) {
  if (request.key.first > request.key.last ||
      request.key.last >= request.tokens.size()) {
    throw std::invalid_argument("score request " + request.request_id +
                                ": span " + KeyString(request.key) +
                                " outside the sentence");
  }
}

// ---------------------------------------------------------------------------
// Score file

ScoreFileSource::ScoreFileSource(std::map<SpanRef, Entry> entries)
    : entries_(std::move(entries)) {}

ScoreFileSource ScoreFileSource::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open score file " + path.string());
  return Read(in, path.string());
}

ScoreFileSource ScoreFileSource::Read(std::istream& in,
                                      std::string_view source_name) {
  std::map<SpanRef, Entry> entries;
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
    for (const char* f : {"doc_id", "sentence_index", "i", "j", "p_start",
                          "p_end"}) {
      if (!obj.contains(f)) {
        throw ParseError(where + ": missing required field \"" + f + "\"");
      }
    }
    SpanRef key;
    Entry entry;
    try {
      key.doc_id = obj["doc_id"].get<std::string>();
      key.sentence_index = obj["sentence_index"].get<int>();
      key.first = obj["i"].get<std::size_t>();
      key.last = obj["j"].get<std::size_t>();
      entry.p_start = obj["p_start"].get<double>();
      entry.p_end = obj["p_end"].get<double>();
    } catch (const json::exception& e) {
      throw ParseError(where + ": bad field type (" + e.what() + ")");
    }
    if (!IsProbability(entry.p_start) || !IsProbability(entry.p_end)) {
      throw ParseError(where + ": probabilities must lie in [0, 1]");
    }
    entries[key] = entry;
  }
  return ScoreFileSource(std::move(entries));
}

std::vector<ScoreResponse> ScoreFileSource::Score(
    std::span<const ScoreRequest> requests) const {
  std::vector<ScoreResponse> out;
  out.reserve(requests.size());
  std::vector<std::string> missing;
  std::size_t missing_count = 0;
  for (const auto& r : requests) {
    auto it = entries_.find(r.key);
    if (it == entries_.end()) {
      if (missing.size() < 10) missing.push_back(KeyString(r.key));
      ++missing_count;
      continue;
    }
    out.push_back(ScoreResponse{r.request_id, it->second.p_start,
                                it->second.p_end});
  }
  if (missing_count > 0) {
    std::string msg = "score file is missing " + std::to_string(missing_count) +
                      " key(s); first: ";
    for (std::size_t k = 0; k < missing.size(); ++k) {
      if (k > 0) msg += ", ";
      msg += missing[k];
    }
    throw Error(msg);
  }
  return out;
}

void WriteScoreFile(std::span<const ScoreRequest> requests,
                    std::span<const ScoreResponse> responses,
                    std::ostream& out) {
  if (requests.size() != responses.size()) {
    throw std::invalid_argument("WriteScoreFile: size mismatch");
  }
  for (std::size_t k = 0; k < requests.size(); ++k) {
    ordered_json obj;
    obj["doc_id"] = requests[k].key.doc_id;
    obj["sentence_index"] = requests[k].key.sentence_index;
    obj["i"] = requests[k].key.first;
    obj["j"] = requests[k].key.last;
    obj["p_start"] = responses[k].p_start;
    obj["p_end"] = responses[k].p_end;
    out << obj.dump() << "\n";
  }
}

// ---------------------------------------------------------------------------
// Fallback boundary statistics

FallbackBoundaryModel::FallbackBoundaryModel(CountMap start_counts,
                                             CountMap end_counts, double alpha)
    : start_counts_(std::move(start_counts)),
      end_counts_(std::move(end_counts)),
      alpha_(alpha) {
  if (!(alpha_ > 0.0)) throw Error("fallback smoothing alpha must be > 0");
}

FallbackBoundaryModel FallbackBoundaryModel::Train(
    std::span<const Topic> corpus, double alpha) {
  if (!(alpha > 0.0)) throw Error("fallback smoothing alpha must be > 0");
  CountMap start, end;
  std::size_t sentences = 0;
  for (const auto& topic : corpus) {
    for (const auto& doc : topic.documents) {
      for (const auto& s : doc.sentences) {
        ++sentences;
        bool seen_word = false;
        const auto& toks = s.tokens;
        for (std::size_t k = 0; k < toks.size(); ++k) {
          if (toks[k].is_punct) continue;
          const std::string w = AsciiLower(toks[k].text);
          Counts& sc = start[w];
          Counts& ec = end[w];
          ++sc.total;
          ++ec.total;
          if (!seen_word || (k > 0 && IsStartContext(toks[k - 1].text))) {
            ++sc.hits;
          }
          if (k + 1 < toks.size() && IsEndContext(toks[k + 1].text)) {
            ++ec.hits;
          }
          seen_word = true;
        }
      }
    }
  }
  if (sentences == 0) throw Error("cannot train fallback scorer on an empty corpus");
  return FallbackBoundaryModel(std::move(start), std::move(end), alpha);
}

double FallbackBoundaryModel::Smoothed(const CountMap& counts,
                                       std::string_view word) const {
  long hits = 0, total = 0;
  if (auto it = counts.find(AsciiLower(word)); it != counts.end()) {
    hits = it->second.hits;
    total = it->second.total;
  }
  return (static_cast<double>(hits) + alpha_) /
         (static_cast<double>(total) + 2.0 * alpha_);
}

double FallbackBoundaryModel::StartProbability(std::string_view word) const {
  return Smoothed(start_counts_, word);
}

double FallbackBoundaryModel::EndProbability(std::string_view word) const {
  return Smoothed(end_counts_, word);
}

std::vector<ScoreResponse> FallbackScoreSource::Score(
    std::span<const ScoreRequest> requests) const {
  std::vector<ScoreResponse> out;
  out.reserve(requests.size());
  for (const auto& r : requests) {
    ValidateRequest(r);
    out.push_back(ScoreResponse{r.request_id,
                                model_.StartProbability(r.tokens[r.key.first]),
                                model_.EndProbability(r.tokens[r.key.last])});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wire format

std::string ResolveScorerEndpoint(std::string configured) {
  if (const char* env = std::getenv(kScorerUrlEnv); env != nullptr && *env) {
    return env;
  }
  return configured;
}

std::string EncodeScoreRequestBody(std::span<const ScoreRequest> requests) {
  ordered_json body;
  body["requests"] = ordered_json::array();
  for (const auto& r : requests) {
    ordered_json item;
    item["request_id"] = r.request_id;
    item["tokens"] = r.tokens;
    item["i"] = r.key.first;
    item["j"] = r.key.last;
    body["requests"].push_back(std::move(item));
  }
  return body.dump();
}

std::vector<ScoreResponse> DecodeScoreResponseBody(
    std::string_view body, std::span<const ScoreRequest> requests) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(std::string("score response: malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object() || !doc.contains("responses") ||
      !doc["responses"].is_array()) {
    throw Error("score response: missing \"responses\" array");
  }
  std::unordered_map<std::string, ScoreResponse> by_id;
  for (const auto& item : doc["responses"]) {
    ScoreResponse r;
    try {
      r.request_id = item.at("request_id").get<std::string>();
      r.p_start = item.at("p_start").get<double>();
      r.p_end = item.at("p_end").get<double>();
    } catch (const json::exception& e) {
      throw Error(std::string("score response: bad item (") + e.what() + ")");
    }
    if (!IsProbability(r.p_start) || !IsProbability(r.p_end)) {
      throw Error("score response " + r.request_id +
                  ": probabilities must lie in [0, 1]");
    }
    if (!by_id.emplace(r.request_id, r).second) {
      throw Error("score response: duplicate request_id " + r.request_id);
    }
  }
  std::vector<ScoreResponse> out;
  out.reserve(requests.size());
  for (const auto& req : requests) {
    auto it = by_id.find(req.request_id);
    if (it == by_id.end()) {
      throw Error("score response: no answer for request_id " + req.request_id);
    }
    out.push_back(it->second);
  }
  if (by_id.size() != requests.size()) {
    throw Error("score response: unexpected request_id in response");
  }
  return out;
}

}  // namespace hilite
