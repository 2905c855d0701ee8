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

#include <algorithm>
#include <array>
#include <string_view>

#include "hilite/tfidf.h"

namespace hilite {
namespace {

// Sorted; looked up by binary search.
constexpr auto kStopwords = std::to_array<std::string_view>({
    "a",       "about",   "above",   "after",   "again",   "against",
    "all",     "also",    "am",      "an",      "and",     "any",
    "are",     "as",      "at",      "be",      "because", "been",
    "before",  "being",   "below",   "between", "both",    "but",
    "by",      "can",     "could",   "did",     "do",      "does",
    "doing",   "down",    "during",  "each",    "either",  "else",
    "ever",    "few",     "for",     "from",    "further", "had",
    "has",     "have",    "having",  "he",      "her",     "here",
    "hers",    "herself", "him",     "himself", "his",     "how",
    "however", "i",       "if",      "in",      "into",    "is",
    "it",      "its",     "itself",  "just",    "may",     "me",
    "might",   "more",    "most",    "much",    "must",    "my",
    "myself",  "neither", "no",      "nor",     "not",     "now",
    "of",      "off",     "often",   "on",      "once",    "only",
    "or",      "other",   "others",  "ought",   "our",     "ours",
    "ourselves", "out",   "over",    "own",     "per",     "rather",
    "said",    "same",    "says",    "shall",   "she",     "should",
    "since",   "so",      "some",    "still",   "such",    "than",
    "that",    "the",     "their",   "theirs",  "them",    "themselves",
    "then",    "there",   "these",   "they",    "this",    "those",
    "though",  "through", "thus",    "to",      "too",     "under",
    "until",   "up",      "upon",    "us",      "very",    "was",
    "we",      "were",    "what",    "when",    "where",   "whether",
    "which",   "while",   "who",     "whom",    "whose",   "why",
    "will",    "with",    "within",  "without", "would",   "yet",
    "you",     "your",    "yours",   "yourself", "yourselves",
});

}  // namespace

bool IsStopword(std::string_view word) {
  return std::binary_search(kStopwords.begin(), kStopwords.end(), word);
}

std::size_t StopwordCount() { return kStopwords.size(); }

}  // namespace hilite
