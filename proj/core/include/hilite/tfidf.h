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

// Topic-local TF-IDF over lowercased words.
//
//   tf(w)  = raw count in the text
//   idf(w) = ln(N / df(w)), N = documents in the topic
//
// Terms absent from the topic get idf 0. When weighting leaves a vector with
// no mass (every term occurs in every document, or a one-document topic),
// the raw counts are used instead so that cosine stays meaningful.

#ifndef HILITE_TFIDF_H_
#define HILITE_TFIDF_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hilite/corpus.h"

namespace hilite {

using SparseVector = std::map<std::string, double, std::less<>>;

SparseVector TermCounts(std::span<const std::string> words);
double Norm(const SparseVector& v);
// 0 when either vector is zero.
double Cosine(const SparseVector& a, const SparseVector& b);

class TfIdfModel {
 public:
  static TfIdfModel FromTopic(const Topic& topic);

  double Idf(std::string_view term) const;
  int num_documents() const { return num_documents_; }

  SparseVector Weight(const SparseVector& counts) const;
  // Weight(counts), or the counts themselves when the weighted vector is
  // zero.
  SparseVector WeightOrCounts(const SparseVector& counts) const;
  double CosineOf(std::span<const std::string> a,
                  std::span<const std::string> b) const;

 private:
  std::unordered_map<std::string, double> idf_;
  int num_documents_ = 0;
};

// Built-in English function-word list, lowercase.
bool IsStopword(std::string_view word);
std::size_t StopwordCount();

}  // namespace hilite

#endif  // HILITE_TFIDF_H_
