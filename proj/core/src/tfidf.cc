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

#include "hilite/tfidf.h"

#include <cmath>
#include <set>

namespace hilite {

SparseVector TermCounts(std::span<const std::string> words) {
  SparseVector v;
  for (const auto& w : words) v[w] += 1.0;
  return v;
}

double Norm(const SparseVector& v) {
  double s = 0.0;
  for (const auto& [term, x] : v) s += x * x;
  return std::sqrt(s);
}

double Cosine(const SparseVector& a, const SparseVector& b) {
  const double na = Norm(a), nb = Norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  const SparseVector& small = a.size() <= b.size() ? a : b;
  const SparseVector& large = a.size() <= b.size() ? b : a;
  double dot = 0.0;
  for (const auto& [term, x] : small) {
    if (auto it = large.find(term); it != large.end()) dot += x * it->second;
  }
  // Clamp rounding so identical vectors give exactly 1.
  const double c = dot / (na * nb);
  return c > 1.0 ? 1.0 : c;
}

TfIdfModel TfIdfModel::FromTopic(const Topic& topic) {
  TfIdfModel m;
  m.num_documents_ = static_cast<int>(topic.documents.size());
  std::unordered_map<std::string, int> df;
  for (const auto& doc : topic.documents) {
    std::set<std::string> seen;
    for (const auto& s : doc.sentences) {
      for (auto& w : LowerWords(s.tokens)) seen.insert(std::move(w));
    }
    for (const auto& w : seen) ++df[w];
  }
  for (const auto& [term, count] : df) {
    m.idf_[term] = std::log(static_cast<double>(m.num_documents_) / count);
  }
  return m;
}

double TfIdfModel::Idf(std::string_view term) const {
  auto it = idf_.find(std::string(term));
  return it == idf_.end() ? 0.0 : it->second;
}

SparseVector TfIdfModel::Weight(const SparseVector& counts) const {
  SparseVector out;
  for (const auto& [term, tf] : counts) {
    const double w = tf * Idf(term);
    if (w != 0.0) out.emplace(term, w);
  }
  return out;
}

SparseVector TfIdfModel::WeightOrCounts(const SparseVector& counts) const {
  SparseVector weighted = Weight(counts);
  return weighted.empty() ? counts : weighted;
}

double TfIdfModel::CosineOf(std::span<const std::string> a,
                            std::span<const std::string> b) const {
  return Cosine(WeightOrCounts(TermCounts(a)), WeightOrCounts(TermCounts(b)));
}

}  // namespace hilite
