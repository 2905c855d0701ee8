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

#include "hilite/porter_stemmer.h"

#include <array>
#include <utility>

namespace hilite {
namespace {

bool IsVowelLetter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// Consonant test for w[i]; y counts as a consonant at the start or after a
// vowel.
bool IsConsonant(const std::string& w, std::size_t i) {
  if (IsVowelLetter(w[i])) return false;
  if (w[i] == 'y') return i == 0 || !IsConsonant(w, i - 1);
  return true;
}

// m in [C](VC)^m[V], over w[0, len).
int Measure(const std::string& w, std::size_t len) {
  int m = 0;
  std::size_t i = 0;
  while (i < len && IsConsonant(w, i)) ++i;
  while (i < len) {
    while (i < len && !IsConsonant(w, i)) ++i;
    if (i >= len) break;
    while (i < len && IsConsonant(w, i)) ++i;
    ++m;
  }
  return m;
}

bool HasVowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (!IsConsonant(w, i)) return true;
  }
  return false;
}

bool EndsDoubleConsonant(const std::string& w, std::size_t len) {
  return len >= 2 && w[len - 1] == w[len - 2] && IsConsonant(w, len - 1);
}

// *o: stem ends consonant-vowel-consonant, last not w, x or y.
bool EndsCvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  if (!IsConsonant(w, len - 3) || IsConsonant(w, len - 2) ||
      !IsConsonant(w, len - 1)) {
    return false;
  }
  const char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool EndsWith(const std::string& w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         std::string_view(w).substr(w.size() - suffix.size()) == suffix;
}

void ReplaceSuffix(std::string& w, std::size_t suffix_len,
                   std::string_view repl) {
  w.resize(w.size() - suffix_len);
  w.append(repl);
}

using Rule = std::pair<std::string_view, std::string_view>;

// The first rule whose suffix matches decides the step; it fires only if the
// remaining stem has measure > min_measure.
template <std::size_t N>
void ApplyRules(std::string& w, const std::array<Rule, N>& rules,
                int min_measure) {
  for (const auto& [suffix, repl] : rules) {
    if (!EndsWith(w, suffix)) continue;
    if (Measure(w, w.size() - suffix.size()) > min_measure) {
      ReplaceSuffix(w, suffix.size(), repl);
    }
    return;
  }
}

void Step1a(std::string& w) {
  if (EndsWith(w, "sses")) {
    ReplaceSuffix(w, 4, "ss");
  } else if (EndsWith(w, "ies")) {
    ReplaceSuffix(w, 3, "i");
  } else if (EndsWith(w, "ss")) {
    // unchanged
  } else if (EndsWith(w, "s")) {
    ReplaceSuffix(w, 1, "");
  }
}

void Step1b(std::string& w) {
  if (EndsWith(w, "eed")) {
    if (Measure(w, w.size() - 3) > 0) ReplaceSuffix(w, 3, "ee");
    return;
  }
  std::size_t cut = 0;
  if (EndsWith(w, "ed") && HasVowel(w, w.size() - 2)) {
    cut = 2;
  } else if (EndsWith(w, "ing") && HasVowel(w, w.size() - 3)) {
    cut = 3;
  }
  if (cut == 0) return;
  ReplaceSuffix(w, cut, "");
  if (EndsWith(w, "at") || EndsWith(w, "bl") || EndsWith(w, "iz")) {
    w.push_back('e');
  } else if (EndsDoubleConsonant(w, w.size())) {
    const char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (Measure(w, w.size()) == 1 && EndsCvc(w, w.size())) {
    w.push_back('e');
  }
}

void Step1c(std::string& w) {
  if (EndsWith(w, "y") && HasVowel(w, w.size() - 1)) w.back() = 'i';
}

void Step2(std::string& w) {
  static constexpr std::array<Rule, 20> kRules = {{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"},
  }};
  ApplyRules(w, kRules, 0);
}

void Step3(std::string& w) {
  static constexpr std::array<Rule, 7> kRules = {{
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""},
  }};
  ApplyRules(w, kRules, 0);
}

void Step4(std::string& w) {
  static constexpr std::array<std::string_view, 19> kSuffixes = {
      "al",   "ance", "ence", "er",  "ic",  "able", "ible",
      "ant",  "ement", "ment", "ent", "ion", "ou",   "ism",
      "ate",  "iti",  "ous",  "ive", "ize",
  };
  // Longest match wins, so "ement" is tried before "ment" and "ent".
  std::string_view best;
  for (auto s : kSuffixes) {
    if (s.size() > best.size() && EndsWith(w, s)) best = s;
  }
  if (best.empty()) return;
  const std::size_t stem = w.size() - best.size();
  if (Measure(w, stem) <= 1) return;
  if (best == "ion" && !(stem > 0 && (w[stem - 1] == 's' || w[stem - 1] == 't'))) {
    return;
  }
  w.resize(stem);
}

void Step5(std::string& w) {
  if (EndsWith(w, "e")) {
    const std::size_t stem = w.size() - 1;
    const int m = Measure(w, stem);
    if (m > 1 || (m == 1 && !EndsCvc(w, stem))) w.pop_back();
  }
  if (Measure(w, w.size()) > 1 && EndsDoubleConsonant(w, w.size()) &&
      w.back() == 'l') {
    w.pop_back();
  }
}

}  // namespace

std::string PorterStem(std::string_view word) {
  std::string w(word);
  if (w.size() <= 2) return w;
  for (char c : w) {
    if (c < 'a' || c > 'z') return w;
  }
  Step1a(w);
  Step1b(w);
  Step1c(w);
  Step2(w);
  Step3(w);
  Step4(w);
  Step5(w);
  return w;
}

}  // namespace hilite
