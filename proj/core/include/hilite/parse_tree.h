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

// Constituency trees in PTB bracket notation and the tree-segment baseline:
// the word span governed by each internal node.

#ifndef HILITE_PARSE_TREE_H_
#define HILITE_PARSE_TREE_H_

#include <string>
#include <string_view>
#include <vector>

#include "hilite/corpus.h"
#include "hilite/segmenter.h"

namespace hilite {

struct ParseTree {
  // Constituent label for internal nodes, the word itself for terminals.
  std::string label;
  std::vector<ParseTree> children;

  bool is_terminal() const { return children.empty(); }
};

// Parses "(S (NP (DT The) (NN storm)) (VP ...))". Terminals are bare tokens.
// A leading "( (S ...) )" wrapper with an empty label is accepted.
// Throws ParseError on unbalanced or empty brackets.
ParseTree ParseBracketed(std::string_view text);

// True for terminals that align with punctuation tokens (and PTB escapes
// such as -LRB-); those are skipped during alignment.
bool IsPunctLeaf(std::string_view word);

// Spans governed by internal nodes, deduplicated (shallowest node wins),
// filtered to >= min_words words, ordered by depth ascending then word count
// descending, truncated to max_per_sentence. Throws AlignmentError naming
// `sentence_name` when the tree's word leaves do not match the sentence.
std::vector<TokenSpan> ExtractTreeSegments(const ParseTree& tree,
                                           const Sentence& sentence,
                                           int min_words, int max_per_sentence,
                                           std::string_view sentence_name);

}  // namespace hilite

#endif  // HILITE_PARSE_TREE_H_
