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

// In-memory corpus: topics made of documents made of tokenized, chunked
// sentences, plus the reference summaries used for labeling and evaluation.
//
// Everything here is immutable once loaded. Sentence text is kept verbatim so
// that highlights can be rendered over the exact source bytes.

#ifndef HILITE_CORPUS_H_
#define HILITE_CORPUS_H_

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hilite {

struct Token {
  std::string text;
  bool is_punct = false;
  // Byte offsets [begin, end) into the source sentence.
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const Token&) const = default;
};

// Inclusive token range [first, last] of a sentence.
struct Chunk {
  std::size_t first = 0;
  std::size_t last = 0;

  bool operator==(const Chunk&) const = default;
};

using SplitSet = std::set<std::string, std::less<>>;

// Comma, semicolon, colon, en/em dash and their ASCII dash spellings.
const SplitSet& DefaultSplitSet();

// Splits on Unicode whitespace, then peels leading and trailing punctuation
// off every word, one token per punctuation character. Apostrophes and
// hyphens inside a word stay attached; dashes split anywhere.
std::vector<Token> Tokenize(std::string_view sentence);

// Every maximal run of tokens between splitting punctuation becomes a chunk,
// trimmed of punctuation at both edges. Runs without a word yield nothing.
std::vector<Chunk> ChunkSentence(std::span<const Token> tokens,
                                 const SplitSet& split_set);

struct Sentence {
  std::string text;
  std::string doc_id;
  int position = 0;  // 0-based index within the document
  std::vector<Token> tokens;
  std::vector<Chunk> chunks;

  // Number of non-punctuation tokens (the unit of all word budgets).
  int WordCount() const;
  int WordCount(std::size_t first, std::size_t last) const;
  // Source bytes covered by tokens [first, last].
  std::string_view SpanText(std::size_t first, std::size_t last) const;

  bool operator==(const Sentence&) const = default;
};

Sentence MakeSentence(std::string text, std::string doc_id, int position,
                      const SplitSet& split_set = DefaultSplitSet());

struct Document {
  std::string doc_id;
  std::vector<Sentence> sentences;

  int WordCount() const;
  bool operator==(const Document&) const = default;
};

struct Reference {
  std::string ref_id;
  std::string text;
  std::vector<Token> tokens;

  bool operator==(const Reference&) const = default;
};

// A (document, sentence, token range) address inside a topic.
struct SpanRef {
  std::string doc_id;
  int sentence_index = 0;
  std::size_t first = 0;
  std::size_t last = 0;

  auto operator<=>(const SpanRef&) const = default;
};

struct Topic {
  std::string topic_id;
  std::vector<Document> documents;
  std::vector<Reference> references;
  int budget_words = 100;

  // nullptr when absent.
  const Document* FindDocument(std::string_view doc_id) const;
  // Index of the document in reading order, or -1.
  int DocumentIndex(std::string_view doc_id) const;
  // Throws hilite::Error when the reference does not resolve to tokens of a
  // sentence in this topic.
  const Sentence& Resolve(const SpanRef& ref) const;

  bool operator==(const Topic&) const = default;
};

// Reads a topic JSONL file; a file may hold several topics, which are
// returned in order of first appearance.
std::vector<Topic> LoadTopics(const std::filesystem::path& path,
                              const SplitSet& split_set = DefaultSplitSet());
std::vector<Topic> ReadTopics(std::istream& in, std::string_view source_name,
                              const SplitSet& split_set = DefaultSplitSet());
// Like LoadTopics but requires exactly one topic.
Topic LoadTopic(const std::filesystem::path& path,
                const SplitSet& split_set = DefaultSplitSet());

// Writes a topic in the same JSONL schema LoadTopics reads.
void WriteTopic(const Topic& topic, std::ostream& out);

// ASCII lowercasing; bytes >= 0x80 pass through unchanged.
std::string AsciiLower(std::string_view s);

// Lowercased text of the non-punctuation tokens, in order.
std::vector<std::string> LowerWords(std::span<const Token> tokens);

}  // namespace hilite

#endif  // HILITE_CORPUS_H_
