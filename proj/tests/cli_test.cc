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

// Runs the installed command-line tool as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

const std::string kData = HILITE_TEST_DATA;

struct Result {
  int code = -1;
  std::string out, err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hilite_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    ::unsetenv("HILITE_SCORER_URL");
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result Exec(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = std::string(HILITE_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(out);
    r.err = Slurp(err);
    return r;
  }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  // segment -> label -> train -> summarize -> evaluate into `sub`.
  void Pipeline(const std::string& sub) {
    fs::create_directories(dir_ / sub);
    const std::string t = "--topics " + kData + "/toy/topics.jsonl";
    const std::string d = P(sub) + "/";
    ASSERT_EQ(Exec("segment " + t + " --out " + d + "cand.jsonl").code, 0);
    ASSERT_EQ(Exec("label " + t + " --candidates " + d + "cand.jsonl --out " + d + "labels.jsonl").code, 0);
    const auto tr = Exec("train " + t + " --candidates " + d + "cand.jsonl --labels " + d +
                         "labels.jsonl --out " + d + "model.json --trace " + d + "trace.txt");
    ASSERT_EQ(tr.code, 0) << tr.err;
    ASSERT_EQ(Exec("summarize " + t + " --candidates " + d + "cand.jsonl --model " + d +
                   "model.json --fill-budget --html " + d + "html --out " + d + "sel.jsonl")
                  .code,
              0);
    ASSERT_EQ(Exec("evaluate " + t + " --selections " + d + "sel.jsonl --out " + d + "eval.json").code, 0);
  }

  fs::path dir_;
};

TEST_F(CliTest, UnknownFlagExitsTwo) {
  const auto r = Exec("segment --topics x --bogus");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(Exec("").code, 2);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = Exec("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("segment"), std::string::npos);
}

TEST_F(CliTest, TreeWithoutParsesExitsOne) {
  const auto r = Exec("segment --topics " + kData + "/toy/topics.jsonl --method tree");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("parse file required"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingInputExitsOne) {
  const auto r = Exec("stats --topics " + P("nope.jsonl"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("hilite: error:"), std::string::npos);
}

TEST_F(CliTest, TreeMethodWithParses) {
  const auto r = Exec("segment --topics " + kData + "/tree/topics.jsonl --method tree --parses " +
                      kData + "/tree/parses.jsonl");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto j = json::parse(line);
    EXPECT_EQ(j["topic_id"], "tr1");
    EXPECT_GE(j["word_count"].get<int>(), 5);
    ++n;
  }
  EXPECT_GT(n, 0);
}

TEST_F(CliTest, EvaluateIdentityGivesOne) {
  const auto r = Exec("evaluate --topics " + kData + "/cli/identity.jsonl --selections " + kData +
                      "/cli/identity_selection.jsonl --bootstrap 100");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  for (const char* m : {"R1", "R2", "RSU4"}) {
    EXPECT_DOUBLE_EQ(j[m]["f"].get<double>(), 1.0) << m;
    EXPECT_DOUBLE_EQ(j[m]["ci95"][0].get<double>(), 1.0) << m;
  }
  EXPECT_EQ(j["topics"], 2);
  EXPECT_EQ(j["n_bootstrap"], 100);
}

TEST_F(CliTest, EndToEndIsByteIdentical) {
  Pipeline("a");
  Pipeline("b");
  for (const char* f : {"cand.jsonl", "labels.jsonl", "model.json", "trace.txt", "sel.jsonl",
                        "eval.json", "html/t01.html", "html/t02.html", "html/t03.html"}) {
    const std::string a = Slurp(dir_ / "a" / f), b = Slurp(dir_ / "b" / f);
    EXPECT_FALSE(a.empty()) << f;
    EXPECT_EQ(a, b) << f;
  }
  const auto j = json::parse(Slurp(dir_ / "a" / "eval.json"));
  EXPECT_GT(j["R1"]["f"].get<double>(), 0.0);
  EXPECT_EQ(j["topics"], 3);
}

TEST_F(CliTest, JobsDoNotChangeOutput) {
  const std::string t = "--topics " + kData + "/toy/topics.jsonl";
  ASSERT_EQ(Exec("--jobs 1 segment " + t + " --out " + P("one.jsonl")).code, 0);
  ASSERT_EQ(Exec("--jobs 4 segment " + t + " --out " + P("four.jsonl")).code, 0);
  EXPECT_EQ(Slurp(P("one.jsonl")), Slurp(P("four.jsonl")));
}

TEST_F(CliTest, ScoreCacheFeedsSegment) {
  const std::string t = "--topics " + kData + "/toy/topics.jsonl";
  ASSERT_EQ(Exec("score " + t + " --source fallback --cache " + P("scores.jsonl")).code, 0);
  ASSERT_EQ(Exec("segment " + t + " --method xlnet-scores --scores " + P("scores.jsonl") +
                 " --out " + P("from_file.jsonl")).code,
            0);
  ASSERT_EQ(Exec("segment " + t + " --out " + P("fallback.jsonl")).code, 0);
  EXPECT_EQ(Slurp(P("from_file.jsonl")), Slurp(P("fallback.jsonl")));
}

TEST_F(CliTest, StatsShape) {
  const auto r = Exec("stats --topics " + kData + "/toy/topics.jsonl");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["sentences"], 44);
  EXPECT_GE(j["segments_per_sentence"].get<double>(), 1.0);
  EXPECT_LE(j["segments_per_sentence"].get<double>(), 6.0);
  EXPECT_GE(j["words_per_segment"].get<double>(), 5.0);
  EXPECT_LE(j["words_per_segment"].get<double>(), 20.0);
}

TEST_F(CliTest, ConfigFile) {
  std::ofstream(P("cfg.ini")) << "jobs = 2\n";
  const auto r = Exec("--config " + P("cfg.ini") + " stats --topics " + kData + "/toy/topics.jsonl");
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, PyramidPairs) {
  const auto r = Exec("pyramid-pairs --topics " + kData + "/toy/topics.jsonl");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int pos = 0, neg = 0;
  while (std::getline(in, line)) {
    const auto j = json::parse(line);
    (j["label"] == "positive" ? pos : neg)++;
  }
  EXPECT_GT(pos, 0);
  EXPECT_EQ(pos, neg);
}

TEST_F(CliTest, UnreachableScorerExitsOne) {
  const auto r = Exec("--scorer-url http://127.0.0.1:1 --timeout 2 segment --topics " + kData +
                      "/tree/topics.jsonl --method xlnet-scores");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/v1/score"), std::string::npos) << r.err;
}

}  // namespace
