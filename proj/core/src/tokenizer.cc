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

#include <array>
#include <cctype>
#include <string_view>
#include <vector>

#include "hilite/corpus.h"

namespace hilite {
namespace {

// Multi-byte punctuation we recognise, as UTF-8 byte sequences.
constexpr std::string_view kEmDash = "\xE2\x80\x94";
constexpr std::string_view kEnDash = "\xE2\x80\x93";
constexpr std::array<std::string_view, 8> kUnicodePeelable = {
    "\xE2\x80\x9C",  // left double quote
    "\xE2\x80\x9D",  // right double quote
    "\xE2\x80\x98",  // left single quote
    "\xE2\x80\x99",  // right single quote
    "\xE2\x80\xA6",  // ellipsis
    "\xC2\xAB",      // left guillemet
    "\xC2\xBB",      // right guillemet
    "\xE2\x80\xA2",  // bullet
};

std::size_t WhitespaceLength(std::string_view s, std::size_t pos) {
  const auto c = static_cast<unsigned char>(s[pos]);
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
      c == '\v') {
    return 1;
  }
  auto at = [&](std::string_view seq) { return s.substr(pos, seq.size()) == seq; };
  if (c == 0xC2 && (at("\xC2\xA0") || at("\xC2\x85"))) return 2;
  if (c == 0xE1 && at("\xE1\x9A\x80")) return 3;
  if (c == 0xE2 && s.size() - pos >= 3) {
    const auto b1 = static_cast<unsigned char>(s[pos + 1]);
    const auto b2 = static_cast<unsigned char>(s[pos + 2]);
    if (b1 == 0x80 && ((b2 >= 0x80 && b2 <= 0x8A) || b2 == 0xA8 ||
                       b2 == 0xA9 || b2 == 0xAF)) {
      return 3;
    }
    if (b1 == 0x81 && b2 == 0x9F) return 3;
  }
  if (c == 0xE3 && at("\xE3\x80\x80")) return 3;
  return 0;
}

// Length of a dash token starting at pos (em/en dash, or a run of two or more
// ASCII hyphens), else 0.
std::size_t DashLength(std::string_view s, std::size_t pos) {
  if (s.substr(pos, kEmDash.size()) == kEmDash) return kEmDash.size();
  if (s.substr(pos, kEnDash.size()) == kEnDash) return kEnDash.size();
  if (s[pos] == '-' && pos + 1 < s.size() && s[pos + 1] == '-') {
    std::size_t n = 0;
    while (pos + n < s.size() && s[pos + n] == '-') ++n;
    return n;
  }
  return 0;
}

bool IsAsciiPeelable(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '"': case '\'': case '`': case '(': case ')': case '[':
    case ']': case '{': case '}': case '<': case '>':
      return true;
    default:
      return false;
  }
}

// Byte length of a peelable punctuation character at the front of s.
std::size_t LeadingPeelable(std::string_view s) {
  if (s.empty()) return 0;
  if (IsAsciiPeelable(s.front())) return 1;
  for (auto seq : kUnicodePeelable) {
    if (s.substr(0, seq.size()) == seq) return seq.size();
  }
  return 0;
}

std::size_t TrailingPeelable(std::string_view s) {
  if (s.empty()) return 0;
  if (IsAsciiPeelable(s.back())) return 1;
  for (auto seq : kUnicodePeelable) {
    if (s.size() >= seq.size() && s.substr(s.size() - seq.size()) == seq) {
      return seq.size();
    }
  }
  return 0;
}

// "U.S.", "a.m.", "W." keep their final period.
bool IsDottedAbbreviation(std::string_view s) {
  if (s.size() < 2 || s.size() % 2 != 0) return false;
  for (std::size_t k = 0; k < s.size(); k += 2) {
    if (!std::isalpha(static_cast<unsigned char>(s[k])) || s[k + 1] != '.') {
      return false;
    }
  }
  return true;
}

bool IsPunctText(std::string_view s) {
  if (s == kEmDash || s == kEnDash) return true;
  for (auto seq : kUnicodePeelable) {
    if (s == seq) return true;
  }
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || !std::ispunct(u)) return false;
  }
  return !s.empty();
}

class TokenSink {
 public:
  explicit TokenSink(std::string_view source) : source_(source) {}

  void Emit(std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    std::string_view text = source_.substr(begin, end - begin);
    tokens_.push_back(Token{std::string(text), IsPunctText(text), begin, end});
  }

  // Peels punctuation off both ends of [begin, end) and emits the pieces.
  void EmitWord(std::size_t begin, std::size_t end) {
    while (begin < end) {
      std::size_t n = LeadingPeelable(source_.substr(begin, end - begin));
      if (n == 0) break;
      Emit(begin, begin + n);
      begin += n;
    }
    std::vector<std::pair<std::size_t, std::size_t>> trailing;
    while (begin < end) {
      std::string_view rest = source_.substr(begin, end - begin);
      if (rest.back() == '.' && IsDottedAbbreviation(rest)) break;
      std::size_t n = TrailingPeelable(rest);
      if (n == 0) break;
      trailing.emplace_back(end - n, end);
      end -= n;
    }
    Emit(begin, end);
    for (auto it = trailing.rbegin(); it != trailing.rend(); ++it) {
      Emit(it->first, it->second);
    }
  }

  std::vector<Token> Release() { return std::move(tokens_); }

 private:
  std::string_view source_;
  std::vector<Token> tokens_;
};

}  // namespace

const SplitSet& DefaultSplitSet() {
  static const SplitSet kSet = {",", ";", ":", std::string(kEmDash),
                                std::string(kEnDash), "-", "--", "---"};
  return kSet;
}

std::vector<Token> Tokenize(std::string_view sentence) {
  TokenSink sink(sentence);
  std::size_t pos = 0;
  const std::size_t n = sentence.size();
  while (pos < n) {
    if (std::size_t ws = WhitespaceLength(sentence, pos); ws > 0) {
      pos += ws;
      continue;
    }
    // One whitespace-delimited word, split further at dashes.
    std::size_t piece = pos;
    while (pos < n && WhitespaceLength(sentence, pos) == 0) {
      if (std::size_t dash = DashLength(sentence, pos); dash > 0) {
        sink.EmitWord(piece, pos);
        sink.Emit(pos, pos + dash);
        pos += dash;
        piece = pos;
      } else {
        ++pos;
      }
    }
    sink.EmitWord(piece, pos);
  }
  return sink.Release();
}

std::vector<Chunk> ChunkSentence(std::span<const Token> tokens,
                                 const SplitSet& split_set) {
  std::vector<Chunk> chunks;
  auto flush = [&](std::size_t begin, std::size_t end) {
    while (begin < end && tokens[begin].is_punct) ++begin;
    while (end > begin && tokens[end - 1].is_punct) --end;
    if (begin < end) chunks.push_back(Chunk{begin, end - 1});
  };
  std::size_t start = 0;
  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (tokens[k].is_punct && split_set.contains(tokens[k].text)) {
      flush(start, k);
      start = k + 1;
    }
  }
  flush(start, tokens.size());
  return chunks;
}

}  // namespace hilite
