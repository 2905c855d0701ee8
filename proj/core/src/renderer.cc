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

#include "hilite/renderer.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <utility>
#include <vector>

#include "hilite/error.h"

namespace hilite {
namespace {

constexpr std::string_view kStyle = R"css(
body { font-family: Georgia, serif; margin: 0; display: flex; }
main { flex: 3; padding: 1.5em 2em; max-width: 50em; }
aside { flex: 1; padding: 1.5em; background: #f6f6f2; border-left: 1px solid #ddd; }
h1 { font-size: 1.3em; }
h2 { font-size: 1em; color: #555; margin-top: 1.6em; }
p.sent { margin: 0.3em 0; line-height: 1.5; }
mark.hl { background: #ffe45c; padding: 0 0.1em; }
aside ol { padding-left: 1.2em; }
aside li { margin-bottom: 0.6em; }
.words { color: #555; font-size: 0.9em; }
)css";

struct Range {
  std::size_t begin;
  std::size_t end;
};

std::string Describe(const SpanRef& r) {
  return "(" + r.doc_id + ", " + std::to_string(r.sentence_index) + ", " +
         std::to_string(r.first) + ", " + std::to_string(r.last) + ")";
}

std::string RenderSentence(const Sentence& s, std::vector<Range> ranges) {
  std::sort(ranges.begin(), ranges.end(), [](const Range& a, const Range& b) {
    return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
  });
  std::vector<Range> merged;
  for (const auto& r : ranges) {
    if (!merged.empty() && r.begin < merged.back().end) {
      merged.back().end = std::max(merged.back().end, r.end);
    } else {
      merged.push_back(r);
    }
  }
  std::string out;
  std::size_t pos = 0;
  const std::string_view text = s.text;
  for (const auto& r : merged) {
    out += EscapeHtml(text.substr(pos, r.begin - pos));
    out += "<mark class=\"";
    out += kHighlightClass;
    out += "\">";
    out += EscapeHtml(text.substr(r.begin, r.end - r.begin));
    out += "</mark>";
    pos = r.end;
  }
  out += EscapeHtml(text.substr(pos));
  return out;
}

}  // namespace

std::string EscapeHtml(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string RenderHtml(const Topic& topic, std::span<const SpanRef> selected) {
  std::map<std::pair<std::string, int>, std::vector<Range>> marks;
  std::vector<std::string> sidebar;
  int words = 0;
  for (const auto& ref : selected) {
    const Sentence* s = nullptr;
    try {
      s = &topic.Resolve(ref);
    } catch (const Error& e) {
      throw Error("selected segment " + Describe(ref) +
                  " does not resolve in topic " + topic.topic_id + ": " +
                  e.what());
    }
    marks[{ref.doc_id, ref.sentence_index}].push_back(
        Range{s->tokens[ref.first].begin, s->tokens[ref.last].end});
    sidebar.push_back(std::string(s->SpanText(ref.first, ref.last)));
    words += s->WordCount(ref.first, ref.last);
  }

  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += "<title>" + EscapeHtml(topic.topic_id) + "</title>\n";
  out += "<style>";
  out += kStyle;
  out += "</style>\n</head>\n<body>\n<main>\n";
  out += "<h1>" + EscapeHtml(topic.topic_id) + "</h1>\n";
  for (const auto& doc : topic.documents) {
    out += "<article class=\"doc\" data-doc=\"" + EscapeHtml(doc.doc_id) +
           "\">\n<h2>" + EscapeHtml(doc.doc_id) + "</h2>\n";
    for (std::size_t k = 0; k < doc.sentences.size(); ++k) {
      auto it = marks.find({doc.doc_id, static_cast<int>(k)});
      out += "<p class=\"";
      out += kSentenceClass;
      out += "\">";
      out += RenderSentence(doc.sentences[k],
                            it == marks.end() ? std::vector<Range>{}
                                              : it->second);
      out += "</p>\n";
    }
    out += "</article>\n";
  }
  out += "</main>\n<aside>\n<h2>Highlights</h2>\n<ol>\n";
  for (const auto& h : sidebar) out += "<li>" + EscapeHtml(h) + "</li>\n";
  out += "</ol>\n<p class=\"words\">" + std::to_string(words) +
         (words == 1 ? " word" : " words") + "</p>\n</aside>\n</body>\n</html>\n";
  return out;
}

void WriteHtml(const Topic& topic, std::span<const SpanRef> selected,
               const std::filesystem::path& path) {
  const std::string html = RenderHtml(topic, selected);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << html;
  if (!out) throw Error("error writing " + path.string());
}

}  // namespace hilite
