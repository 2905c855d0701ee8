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

#include "hilite/corpus.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "hilite/error.h"
#include "json.hpp"

namespace hilite {
namespace {

using json = nlohmann::json;

std::string Where(std::string_view source, int line) {
  std::ostringstream os;
  os << source << ":" << line;
  return os.str();
}

const json& RequireField(const json& obj, const char* field,
                         std::string_view source, int line) {
  auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) {
    throw ParseError(Where(source, line) + ": missing required field \"" +
                     field + "\"");
  }
  return *it;
}

std::string RequireString(const json& obj, const char* field,
                          std::string_view source, int line) {
  const json& v = RequireField(obj, field, source, line);
  if (!v.is_string()) {
    throw ParseError(Where(source, line) + ": field \"" + field +
                     "\" must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

int Sentence::WordCount() const {
  return static_cast<int>(std::count_if(
      tokens.begin(), tokens.end(), [](const Token& t) { return !t.is_punct; }));
}

int Sentence::WordCount(std::size_t first, std::size_t last) const {
  int words = 0;
  for (std::size_t k = first; k <= last && k < tokens.size(); ++k) {
    if (!tokens[k].is_punct) ++words;
  }
  return words;
}

std::string_view Sentence::SpanText(std::size_t first, std::size_t last) const {
  std::string_view view(text);
  return view.substr(tokens[first].begin,
                     tokens[last].end - tokens[first].begin);
}

Sentence MakeSentence(std::string text, std::string doc_id, int position,
                      const SplitSet& split_set) {
  Sentence s;
  s.text = std::move(text);
  s.doc_id = std::move(doc_id);
  s.position = position;
  s.tokens = Tokenize(s.text);
  s.chunks = ChunkSentence(s.tokens, split_set);
  return s;
}

int Document::WordCount() const {
  int words = 0;
  for (const auto& s : sentences) words += s.WordCount();
  return words;
}

const Document* Topic::FindDocument(std::string_view doc_id) const {
  for (const auto& d : documents) {
    if (d.doc_id == doc_id) return &d;
  }
  return nullptr;
}

int Topic::DocumentIndex(std::string_view doc_id) const {
  for (std::size_t k = 0; k < documents.size(); ++k) {
    if (documents[k].doc_id == doc_id) return static_cast<int>(k);
  }
  return -1;
}

const Sentence& Topic::Resolve(const SpanRef& ref) const {
  auto describe = [&] {
    std::ostringstream os;
    os << "segment " << ref.doc_id << "/" << ref.sentence_index << "/["
       << ref.first << "," << ref.last << "] in topic " << topic_id;
    return os.str();
  };
  const Document* doc = FindDocument(ref.doc_id);
  if (doc == nullptr) throw Error(describe() + ": unknown document");
  if (ref.sentence_index < 0 ||
      ref.sentence_index >= static_cast<int>(doc->sentences.size())) {
    throw Error(describe() + ": sentence index out of range");
  }
  const Sentence& s = doc->sentences[ref.sentence_index];
  if (ref.first > ref.last || ref.last >= s.tokens.size()) {
    throw Error(describe() + ": token range out of range");
  }
  return s;
}

std::vector<Topic> ReadTopics(std::istream& in, std::string_view source_name,
                              const SplitSet& split_set) {
  std::vector<Topic> topics;
  std::map<std::string, std::size_t> index;
  auto topic_for = [&](const std::string& id) -> Topic& {
    auto [it, inserted] = index.emplace(id, topics.size());
    if (inserted) {
      topics.emplace_back();
      topics.back().topic_id = id;
    }
    return topics[it->second];
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(Where(source_name, line_no) + ": malformed JSON (" +
                       e.what() + ")");
    }
    if (!obj.is_object()) {
      throw ParseError(Where(source_name, line_no) + ": expected a JSON object");
    }
    const std::string type = RequireString(obj, "type", source_name, line_no);
    const std::string topic_id =
        RequireString(obj, "topic_id", source_name, line_no);
    if (type == "doc") {
      std::string doc_id = RequireString(obj, "doc_id", source_name, line_no);
      const json& sentences =
          RequireField(obj, "sentences", source_name, line_no);
      if (!sentences.is_array()) {
        throw ParseError(Where(source_name, line_no) +
                         ": field \"sentences\" must be an array");
      }
      Topic& topic = topic_for(topic_id);
      if (topic.FindDocument(doc_id) != nullptr) {
        throw ParseError(Where(source_name, line_no) + ": duplicate doc_id \"" +
                         doc_id + "\" in topic " + topic_id);
      }
      Document doc;
      doc.doc_id = doc_id;
      for (const auto& s : sentences) {
        if (!s.is_string()) {
          throw ParseError(Where(source_name, line_no) +
                           ": every sentence must be a string");
        }
        doc.sentences.push_back(MakeSentence(
            s.get<std::string>(), doc_id,
            static_cast<int>(doc.sentences.size()), split_set));
      }
      topic.documents.push_back(std::move(doc));
    } else if (type == "ref") {
      Reference ref;
      ref.ref_id = RequireString(obj, "ref_id", source_name, line_no);
      ref.text = RequireString(obj, "text", source_name, line_no);
      ref.tokens = Tokenize(ref.text);
      topic_for(topic_id).references.push_back(std::move(ref));
    } else {
      throw ParseError(Where(source_name, line_no) + ": unknown record type \"" +
                       type + "\"");
    }
  }

  for (const auto& t : topics) {
    if (t.documents.empty()) {
      throw ParseError(std::string(source_name) + ": topic " + t.topic_id +
                       ": topic must contain at least one document");
    }
  }
  return topics;
}

std::vector<Topic> LoadTopics(const std::filesystem::path& path,
                              const SplitSet& split_set) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open topic file " + path.string());
  return ReadTopics(in, path.string(), split_set);
}

Topic LoadTopic(const std::filesystem::path& path, const SplitSet& split_set) {
  auto topics = LoadTopics(path, split_set);
  if (topics.empty()) {
    throw ParseError(path.string() +
                     ": topic must contain at least one document");
  }
  if (topics.size() != 1) {
    throw ParseError(path.string() + ": expected one topic, found " +
                     std::to_string(topics.size()));
  }
  return std::move(topics.front());
}

void WriteTopic(const Topic& topic, std::ostream& out) {
  for (const auto& doc : topic.documents) {
    nlohmann::ordered_json obj;
    obj["type"] = "doc";
    obj["topic_id"] = topic.topic_id;
    obj["doc_id"] = doc.doc_id;
    obj["sentences"] = nlohmann::ordered_json::array();
    for (const auto& s : doc.sentences) obj["sentences"].push_back(s.text);
    out << obj.dump() << "\n";
  }
  for (const auto& ref : topic.references) {
    nlohmann::ordered_json obj;
    obj["type"] = "ref";
    obj["topic_id"] = topic.topic_id;
    obj["ref_id"] = ref.ref_id;
    obj["text"] = ref.text;
    out << obj.dump() << "\n";
  }
}

std::string AsciiLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> LowerWords(std::span<const Token> tokens) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!t.is_punct) words.push_back(AsciiLower(t.text));
  }
  return words;
}

}  // namespace hilite
