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

#include "hilite/io.h"

#include <gtest/gtest.h>

#include <sstream>

#include "hilite/error.h"

namespace hilite {
namespace {

Topic Fixture() {
  Topic t;
  t.topic_id = "t";
  Document d;
  d.doc_id = "d";
  d.sentences.push_back(MakeSentence("Storm waters rose over the old bridge.", "d", 0));
  t.documents.push_back(d);
  return t;
}

TEST(CandidatesIoTest, RoundTripIsExact) {
  const Topic t = Fixture();
  CandidateSegment c;
  c.segment_id = 3;
  c.doc_id = "d";
  c.sentence_index = 0;
  c.span = TokenSpan{1, 5};
  c.word_count = 5;
  c.p_start = 0.1;
  c.p_end = 1.0 / 3.0;
  c.p_self = 0.5 * (c.p_start + c.p_end);
  c.rank = 2;
  std::stringstream ss;
  WriteCandidates(t, std::vector<CandidateSegment>{c}, ss);
  EXPECT_NE(ss.str().find("\"text\":\"waters rose over the old\""), std::string::npos) << ss.str();
  const auto back = ReadCandidates(ss, "mem");
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].topic_id, "t");
  ASSERT_EQ(back[0].segments.size(), 1u);
  EXPECT_EQ(back[0].segments[0], c);
}

TEST(CandidatesIoTest, GroupsByTopicInFirstAppearanceOrder) {
  std::istringstream in(
      R"({"topic_id":"b","segment_id":0,"doc_id":"x","sentence_index":0,"i":0,"j":4,"word_count":5,"p_start":0.5,"p_end":0.5})"
      "\n\n"
      R"({"topic_id":"a","segment_id":0,"doc_id":"y","sentence_index":1,"i":0,"j":4,"word_count":5,"p_start":0.5,"p_end":0.25})"
      "\n"
      R"({"topic_id":"b","segment_id":1,"doc_id":"x","sentence_index":1,"i":0,"j":4,"word_count":5,"p_start":0.5,"p_end":0.5})"
      "\n");
  const auto all = ReadCandidates(in, "mem");
  ASSERT_EQ(all.size(), 2u);
  EXPECT_EQ(all[0].topic_id, "b");
  EXPECT_EQ(all[0].segments.size(), 2u);
  EXPECT_DOUBLE_EQ(all[1].segments[0].p_self, 0.375);
  EXPECT_EQ(FindTopic(std::span<const TopicCandidates>(all), "a"), &all[1]);
  EXPECT_EQ(FindTopic(std::span<const TopicCandidates>(all), "zz"), nullptr);
}

TEST(CandidatesIoTest, Errors) {
  std::istringstream missing(R"({"topic_id":"b","doc_id":"x"})");
  EXPECT_THROW(ReadCandidates(missing, "mem"), ParseError);
  std::istringstream bad("{nope");
  EXPECT_THROW(ReadCandidates(bad, "mem"), ParseError);
  std::istringstream reversed(
      R"({"topic_id":"b","segment_id":0,"doc_id":"x","sentence_index":0,"i":5,"j":4,"word_count":5,"p_start":0.5,"p_end":0.5})");
  EXPECT_THROW(ReadCandidates(reversed, "mem"), ParseError);
  EXPECT_THROW(LoadCandidates("/nonexistent/file.jsonl"), Error);
}

TEST(SegmentListIoTest, RoundTrip) {
  const SegmentList a{"t1", {{"d", 0, 1, 5}, {"e", 2, 0, 7}}};
  const SegmentList b{"t2", {}};
  std::stringstream ss;
  WriteSegmentList(a, ss);
  WriteSegmentList(b, ss);
  const auto back = ReadSegmentLists(ss, "mem");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], a);
  EXPECT_EQ(back[1], b);
  EXPECT_EQ(FindTopic(std::span<const SegmentList>(back), "t2"), &back[1]);
}

TEST(SegmentListIoTest, DuplicateTopicRejected) {
  std::istringstream in("{\"topic_id\":\"t\",\"segments\":[]}\n{\"topic_id\":\"t\",\"segments\":[]}\n");
  EXPECT_THROW(ReadSegmentLists(in, "mem"), ParseError);
  std::istringstream not_array(R"({"topic_id":"t","segments":3})");
  EXPECT_THROW(ReadSegmentLists(not_array, "mem"), ParseError);
}

TEST(ParsesIoTest, ReadAndDuplicate) {
  std::istringstream in(
      "{\"doc_id\":\"d\",\"sentence_index\":0,\"parse\":\"(S (NN a))\"}\n"
      "{\"doc_id\":\"d\",\"sentence_index\":1,\"parse\":\"(S (NN b))\"}\n");
  const auto m = ReadParses(in, "mem");
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at({"d", 1}), "(S (NN b))");
  std::istringstream dup(
      "{\"doc_id\":\"d\",\"sentence_index\":0,\"parse\":\"x\"}\n"
      "{\"doc_id\":\"d\",\"sentence_index\":0,\"parse\":\"y\"}\n");
  EXPECT_THROW(ReadParses(dup, "mem"), ParseError);
}

TEST(ParsesIoTest, FixtureLoads) {
  const auto m = LoadParses(std::string(HILITE_TEST_DATA) + "/tree/parses.jsonl");
  EXPECT_EQ(m.size(), 2u);
}

}  // namespace
}  // namespace hilite
