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

#include "hilite/segmenter.h"

#include <gtest/gtest.h>

#include <random>

#include "test_oracles.h"

namespace hilite {
namespace {

Sentence Words(int n) {
  std::string text;
  for (int k = 0; k < n; ++k) text += (k ? " w" : "w") + std::to_string(k);
  return MakeSentence(text, "d", 0);
}

CandidateSegment Cand(std::size_t first, std::size_t last, double ps,
                      double pe) {
  CandidateSegment c;
  c.doc_id = "d";
  c.span = TokenSpan{first, last};
  c.word_count = static_cast<int>(last - first + 1);
  c.p_start = ps;
  c.p_end = pe;
  c.p_self = 0.5 * (ps + pe);
  return c;
}

TEST(EnumerateTest, BelowMinimum) {
  const auto s = Words(4);
  EXPECT_TRUE(EnumerateCandidates(s, s.chunks[0], 5).empty());
}

TEST(EnumerateTest, ExactlyMinimum) {
  const auto s = Words(5);
  const auto spans = EnumerateCandidates(s, s.chunks[0], 5);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0], (TokenSpan{0, 4}));
}

TEST(EnumerateTest, EightWordsGivesTen) {
  const auto s = Words(8);
  const auto spans = EnumerateCandidates(s, s.chunks[0], 5);
  // Oracle: every (i, j) with j - i + 1 >= 5 over 8 items.
  std::vector<TokenSpan> expected;
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = i; j < 8; ++j) {
      if (j - i + 1 >= 5) expected.push_back({i, j});
    }
  }
  EXPECT_EQ(spans, expected);
  EXPECT_EQ(spans.size(), 10u);
}

TEST(EnumerateTest, ClosedFormCount) {
  for (int n = 5; n <= 60; ++n) {
    const auto s = Words(n);
    EXPECT_EQ(EnumerateCandidates(s, s.chunks[0], 5).size(),
              static_cast<std::size_t>((n - 4) * (n - 3) / 2))
        << n;
  }
}

TEST(EnumerateTest, SpansStayInsideChunkAndStartOnWords) {
  const auto s = MakeSentence(
      "The river (swollen by rain) rose fast, and crews worked all night.", "d", 0);
  for (const auto& chunk : s.chunks) {
    for (const auto& span : EnumerateCandidates(s, chunk, 3)) {
      EXPECT_GE(span.first, chunk.first);
      EXPECT_LE(span.last, chunk.last);
      EXPECT_FALSE(s.tokens[span.first].is_punct);
      EXPECT_FALSE(s.tokens[span.last].is_punct);
      EXPECT_GE(s.WordCount(span.first, span.last), 3);
    }
  }
}

TEST(EnumerateTest, RejectsZeroMinimum) {
  const auto s = Words(3);
  EXPECT_THROW(EnumerateCandidates(s, s.chunks[0], 0), std::invalid_argument);
}

TEST(QuartileTest, NearestRank) {
  EXPECT_DOUBLE_EQ(UpperQuartile({0.4, 0.1, 0.3, 0.2}), 0.3);
  EXPECT_DOUBLE_EQ(UpperQuartile({0.7}), 0.7);
  EXPECT_DOUBLE_EQ(UpperQuartile({1, 2, 3, 4, 5}), 4);
}

TEST(QuartileTest, EmptyInput) { EXPECT_TRUE(QuartileFilter({}).empty()); }

TEST(QuartileTest, SingleCandidateSurvives) {
  const std::vector<CandidateSegment> c = {Cand(0, 4, 0.2, 0.9)};
  EXPECT_EQ(QuartileFilter(c).size(), 1u);
}

TEST(QuartileTest, FourCandidates) {
  std::vector<CandidateSegment> c;
  const double p[] = {0.1, 0.2, 0.3, 0.4};
  for (int k = 0; k < 4; ++k) c.push_back(Cand(k, k + 4, p[k], p[k]));
  const auto out = QuartileFilter(c);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out[0].p_start, 0.4);
  EXPECT_DOUBLE_EQ(out[1].p_start, 0.3);
}

TEST(QuartileTest, AllEqualSurvive) {
  std::vector<CandidateSegment> c;
  for (int k = 0; k < 7; ++k) c.push_back(Cand(k, k + 5, 0.25, 0.6));
  EXPECT_EQ(QuartileFilter(c).size(), 7u);
}

TEST(QuartileTest, TieBreakEarlierStartThenShorter) {
  std::vector<CandidateSegment> c = {Cand(2, 8, 0.5, 0.5), Cand(0, 9, 0.5, 0.5),
                                     Cand(0, 6, 0.5, 0.5)};
  const auto out = QuartileFilter(c);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].span, (TokenSpan{0, 6}));
  EXPECT_EQ(out[1].span, (TokenSpan{0, 9}));
  EXPECT_EQ(out[2].span, (TokenSpan{2, 8}));
}

TEST(QuartileTest, MatchesReferenceFilterOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 40);
  std::uniform_int_distribution<int> level(0, 9);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = size(rng);
    std::vector<CandidateSegment> c;
    std::vector<std::pair<double, double>> p;
    for (int k = 0; k < n; ++k) {
      // Coarse values so ties are common.
      const double a = level(rng) / 10.0, b = level(rng) / 10.0;
      c.push_back(Cand(k, k + 5, a, b));
      p.emplace_back(a, b);
    }
    const auto expected = testing::ReferenceQuartileSurvivors(p);
    const auto out = QuartileFilter(c);
    std::set<std::size_t> got;
    for (const auto& s : out) got.insert(s.span.first);
    EXPECT_EQ(got, expected);
    for (std::size_t k = 1; k < out.size(); ++k) {
      EXPECT_FALSE(RanksBefore(out[k], out[k - 1]));
    }
  }
}

}  // namespace
}  // namespace hilite
