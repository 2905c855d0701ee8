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

#include "hilite/parse_tree.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "hilite/error.h"

namespace hilite {
namespace {

class BracketReader {
 public:
  explicit BracketReader(std::string_view text) : text_(text) {}

  ParseTree ReadTree() {
    SkipSpace();
    ParseTree tree = ReadNode();
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters after tree");
    // "( (S ...) )": unwrap the anonymous root.
    if (tree.label.empty() && tree.children.size() == 1 &&
        !tree.children.front().is_terminal()) {
      ParseTree inner = std::move(tree.children.front());
      return inner;
    }
    if (tree.label.empty()) tree.label = "ROOT";
    return tree;
  }

 private:
  ParseTree ReadNode() {
    if (pos_ >= text_.size() || text_[pos_] != '(') Fail("expected '('");
    ++pos_;
    ParseTree node;
    SkipSpace();
    node.label = ReadAtom();
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size()) Fail("unbalanced brackets");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (text_[pos_] == '(') {
        node.children.push_back(ReadNode());
      } else {
        ParseTree leaf;
        leaf.label = ReadAtom();
        node.children.push_back(std::move(leaf));
      }
    }
    if (node.children.empty()) Fail("constituent without children");
    return node;
  }

  std::string ReadAtom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError("bracketed tree, offset " + std::to_string(pos_) + ": " +
                     what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

struct NodeSpan {
  int depth = 0;
  TokenSpan span;
  int words = 0;
};

// Walks the tree assigning sentence token indices to word leaves. Returns the
// governed span of `node` when it covers at least one word.
std::optional<TokenSpan> Collect(const ParseTree& node, int depth,
                                 const std::vector<std::size_t>& word_tokens,
                                 std::size_t& next_word,
                                 std::vector<NodeSpan>& out) {
  if (node.is_terminal()) {
    if (IsPunctLeaf(node.label)) return std::nullopt;
    const std::size_t k = next_word++;
    if (k >= word_tokens.size()) return std::nullopt;  // checked by caller
    return TokenSpan{word_tokens[k], word_tokens[k]};
  }
  const std::size_t words_before = next_word;
  std::optional<TokenSpan> span;
  for (const auto& child : node.children) {
    auto sub = Collect(child, depth + 1, word_tokens, next_word, out);
    if (!sub) continue;
    if (!span) {
      span = sub;
    } else {
      span->first = std::min(span->first, sub->first);
      span->last = std::max(span->last, sub->last);
    }
  }
  if (span) {
    out.push_back(NodeSpan{depth, *span,
                           static_cast<int>(next_word - words_before)});
  }
  return span;
}

}  // namespace

ParseTree ParseBracketed(std::string_view text) {
  return BracketReader(text).ReadTree();
}

bool IsPunctLeaf(std::string_view word) {
  static constexpr std::string_view kEscapes[] = {
      "-LRB-", "-RRB-", "-LCB-", "-RCB-", "-LSB-", "-RSB-", "``", "''"};
  for (auto e : kEscapes) {
    if (word == e) return true;
  }
  const auto tokens = Tokenize(word);
  if (tokens.empty()) return false;
  return std::all_of(tokens.begin(), tokens.end(),
                     [](const Token& t) { return t.is_punct; });
}

std::vector<TokenSpan> ExtractTreeSegments(const ParseTree& tree,
                                           const Sentence& sentence,
                                           int min_words, int max_per_sentence,
                                           std::string_view sentence_name) {
  std::vector<std::size_t> word_tokens;
  for (std::size_t k = 0; k < sentence.tokens.size(); ++k) {
    if (!sentence.tokens[k].is_punct) word_tokens.push_back(k);
  }

  std::vector<NodeSpan> nodes;
  std::size_t next_word = 0;
  Collect(tree, 0, word_tokens, next_word, nodes);
  if (next_word != word_tokens.size()) {
    throw AlignmentError("sentence " + std::string(sentence_name) +
                         ": parse has " + std::to_string(next_word) +
                         " word leaves but the sentence has " +
                         std::to_string(word_tokens.size()) + " words");
  }

  // Shallowest node per span.
  std::map<TokenSpan, NodeSpan> unique;
  for (const auto& n : nodes) {
    auto [it, inserted] = unique.emplace(n.span, n);
    if (!inserted && n.depth < it->second.depth) it->second = n;
  }
  std::vector<NodeSpan> kept;
  for (const auto& [span, n] : unique) {
    if (n.words >= min_words) kept.push_back(n);
  }
  std::sort(kept.begin(), kept.end(), [](const NodeSpan& a, const NodeSpan& b) {
    if (a.depth != b.depth) return a.depth < b.depth;
    if (a.words != b.words) return a.words > b.words;
    return a.span < b.span;
  });
  if (max_per_sentence >= 0 &&
      kept.size() > static_cast<std::size_t>(max_per_sentence)) {
    kept.resize(max_per_sentence);
  }
  std::vector<TokenSpan> spans;
  spans.reserve(kept.size());
  for (const auto& n : kept) spans.push_back(n.span);
  return spans;
}

}  // namespace hilite
