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

// hilite: sub-sentence highlight extraction from the command line.
//
//   hilite segment   --topics T [--method fallback|xlnet-scores|tree] > C
//   hilite score     --topics T --cache S
//   hilite label     --topics T --candidates C > LABELS
//   hilite train     --topics T --candidates C --labels LABELS --out M
//   hilite summarize --topics T --candidates C --model M [--html DIR] > SEL
//   hilite evaluate  --topics T --selections SEL [--bootstrap N --seed S]
//   hilite stats     --topics T [--candidates C]
//   hilite pyramid-pairs --topics T > PAIRS
//
// Exit status: 0 success, 1 data or runtime error, 2 usage error.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hilite/corpus.h"
#include "hilite/dpp.h"
#include "hilite/error.h"
#include "hilite/features.h"
#include "hilite/io.h"
#include "hilite/oracle.h"
#include "hilite/pipeline.h"
#include "hilite/renderer.h"
#include "hilite/rouge.h"
#include "hilite/scorer.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace hilite;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Common {
  int jobs = 1;
  std::string scorer_url = "http://127.0.0.1:8080";
  int batch_size = 64;
  int max_in_flight = 1;
  int timeout = 60;
};

// Writes to a file, or to stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void Close(const std::string& path) {
    stream().flush();
    if (!stream()) throw Error("error writing " + path);
  }

 private:
  std::ofstream file_;
};

void Warn(const std::string& msg) { std::cerr << "hilite: warning: " << msg << "\n"; }

HttpScorerOptions ScorerOptions(const Common& c) {
  return HttpScorerOptions{c.batch_size, c.max_in_flight, c.timeout};
}

std::unique_ptr<PyramidSource> MakePyramid(const std::string& kind,
                                           const Common& c) {
  if (kind == "service") {
    return std::make_unique<HttpPyramidSource>(c.scorer_url, c.batch_size,
                                               c.timeout);
  }
  return std::make_unique<FallbackPyramidSource>();
}

const std::vector<CandidateSegment>& CandidatesFor(
    const std::vector<TopicCandidates>& all, const Topic& topic) {
  static const std::vector<CandidateSegment> kEmpty;
  const TopicCandidates* tc = FindTopic(all, topic.topic_id);
  if (tc == nullptr) {
    Warn("no candidates for topic " + topic.topic_id);
    return kEmpty;
  }
  return tc->segments;
}

// Splits a reference summary into sentences at ., ! and ? tokens.
std::vector<std::string> SplitSentences(const std::string& text) {
  std::vector<std::string> out;
  const auto toks = Tokenize(text);
  std::size_t begin = std::string::npos;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    if (begin == std::string::npos) begin = toks[k].begin;
    const auto& t = toks[k].text;
    if (t == "." || t == "!" || t == "?" || k + 1 == toks.size()) {
      out.push_back(text.substr(begin, toks[k].end - begin));
      begin = std::string::npos;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

struct SegmentArgs {
  std::string topics, method = "fallback", scores, parses, out = "-";
  int min_words = kDefaultMinWords;
  int max_per_sentence = kDefaultMaxPerSentence;
  double alpha = 1.0;
};

int RunSegment(const SegmentArgs& a, const Common& c) {
  const auto topics = LoadTopics(a.topics);
  const SegmenterConfig cfg{a.min_words, a.max_per_sentence};

  std::unique_ptr<ScoreSource> source;
  ParseMap parses;
  if (a.method == "tree") {
    if (a.parses.empty()) throw Error("parse file required for --method tree");
    parses = LoadParses(a.parses);
  } else if (a.method == "fallback") {
    source = std::make_unique<FallbackScoreSource>(
        FallbackBoundaryModel::Train(topics, a.alpha));
  } else if (!a.scores.empty()) {
    source = std::make_unique<ScoreFileSource>(ScoreFileSource::Load(a.scores));
  } else {
    source = std::make_unique<HttpScoreSource>(c.scorer_url, ScorerOptions(c));
  }

  std::vector<std::string> chunks(topics.size());
  ParallelFor(topics.size(), c.jobs, [&](std::size_t t) {
    const auto segs = source ? SegmentTopic(topics[t], *source, cfg)
                             : TreeSegmentTopic(topics[t], parses, cfg);
    std::ostringstream os;
    WriteCandidates(topics[t], segs, os);
    chunks[t] = os.str();
  });
  Output out(a.out);
  for (const auto& s : chunks) out.stream() << s;
  out.Close(a.out);
  return 0;
}

struct ScoreArgs {
  std::string topics, source = "http", cache, candidates, out = "-";
  int min_words = kDefaultMinWords;
  double alpha = 1.0;
};

int RunScore(const ScoreArgs& a, const Common& c) {
  const auto topics = LoadTopics(a.topics);
  std::unique_ptr<ScoreSource> source;
  if (a.source == "fallback") {
    source = std::make_unique<FallbackScoreSource>(
        FallbackBoundaryModel::Train(topics, a.alpha));
  } else {
    source = std::make_unique<HttpScoreSource>(c.scorer_url, ScorerOptions(c));
  }

  if (!a.cache.empty()) {
    Output cache(a.cache);
    const SegmenterConfig cfg{a.min_words, kDefaultMaxPerSentence};
    for (const auto& topic : topics) {
      const auto requests = CandidateRequests(topic, cfg);
      WriteScoreFile(requests, source->Score(requests), cache.stream());
    }
    cache.Close(a.cache);
  }

  if (!a.candidates.empty()) {
    const auto all = LoadCandidates(a.candidates);
    Output out(a.out);
    for (const auto& topic : topics) {
      const TopicCandidates* tc = FindTopic(all, topic.topic_id);
      if (tc == nullptr) continue;
      std::vector<ScoreRequest> requests;
      for (const auto& seg : tc->segments) {
        const Sentence& s = topic.Resolve(seg.ref());
        std::vector<std::string> texts;
        for (const auto& t : s.tokens) texts.push_back(t.text);
        requests.push_back(ScoreRequest{"r" + std::to_string(requests.size()),
                                        seg.ref(), std::move(texts)});
      }
      const auto responses = source->Score(requests);
      std::vector<CandidateSegment> segs = tc->segments;
      for (std::size_t k = 0; k < segs.size(); ++k) {
        segs[k].p_start = responses[k].p_start;
        segs[k].p_end = responses[k].p_end;
        segs[k].p_self = responses[k].p_self();
      }
      WriteCandidates(topic, segs, out.stream());
    }
    out.Close(a.out);
  } else if (a.cache.empty()) {
    throw Error("nothing to do: give --cache and/or --candidates");
  }
  return 0;
}

struct LabelArgs {
  std::string topics, candidates, out = "-";
  bool no_stem = false;
};

int RunLabel(const LabelArgs& a, const Common& c) {
  const auto topics = LoadTopics(a.topics);
  const auto all = LoadCandidates(a.candidates);
  RougeOptions opts;
  opts.stem = !a.no_stem;

  std::vector<OracleResult> results(topics.size());
  ParallelFor(topics.size(), c.jobs, [&](std::size_t t) {
    results[t] = BuildOracleLabels(topics[t], CandidatesFor(all, topics[t]), opts);
  });
  Output out(a.out);
  for (const auto& r : results) {
    for (const auto& w : r.warnings) Warn("topic " + r.topic_id + ": " + w);
    WriteSegmentList(SegmentList{r.topic_id, r.segments}, out.stream());
  }
  out.Close(a.out);
  return 0;
}

struct TrainArgs {
  std::string topics, candidates, labels, out, pyramid = "fallback", trace;
  double lr = 0.05;
  int iters = 200;
  double tol = 1e-4;
};

int RunTrain(const TrainArgs& a, const Common& c) {
  const auto topics = LoadTopics(a.topics);
  const auto all = LoadCandidates(a.candidates);
  const auto labels = LoadSegmentLists(a.labels);
  auto pyramid = MakePyramid(a.pyramid, c);

  std::vector<std::optional<dpp::Instance>> built(topics.size());
  ParallelFor(topics.size(), c.jobs, [&](std::size_t t) {
    const Topic& topic = topics[t];
    const SegmentList* l = FindTopic(labels, topic.topic_id);
    const auto& segs = CandidatesFor(all, topic);
    if (l == nullptr || l->segments.empty() || segs.empty()) return;
    built[t] = BuildInstance(topic, segs, l->segments, *pyramid);
  });
  std::vector<dpp::Instance> instances;
  for (std::size_t t = 0; t < topics.size(); ++t) {
    if (built[t]) {
      instances.push_back(std::move(*built[t]));
    } else {
      Warn("topic " + topics[t].topic_id + " has no labels or candidates; skipped");
    }
  }

  dpp::TrainConfig cfg;
  cfg.learning_rate = a.lr;
  cfg.max_iters = a.iters;
  cfg.tol = a.tol;
  cfg.pyramid_dim = pyramid->dim();
  const dpp::TrainResult result = dpp::Train(instances, cfg);
  result.model.Save(a.out);
  if (!a.trace.empty()) {
    Output tr(a.trace);
    tr.stream() << std::setprecision(17);
    for (double v : result.trace) tr.stream() << v << "\n";
    tr.Close(a.trace);
  }
  std::cerr << "hilite: trained on " << instances.size() << " topic(s), "
            << result.iterations << " iteration(s), log-likelihood "
            << result.trace.back() << ", |grad|_inf " << result.grad_inf_norm
            << (result.converged ? ", converged" : ", iteration limit reached");
  if (result.skipped > 0) std::cerr << ", " << result.skipped << " singular instance(s) skipped";
  std::cerr << "\n";
  return 0;
}

struct SummarizeArgs {
  std::string topics, candidates, model, out = "-", html, pyramid = "fallback";
  bool fill_budget = false;
};

int RunSummarize(const SummarizeArgs& a, const Common& c) {
  const auto topics = LoadTopics(a.topics);
  const auto all = LoadCandidates(a.candidates);
  const auto model = dpp::QualityModel::Load(a.model);
  auto pyramid = MakePyramid(a.pyramid, c);
  if (!a.html.empty()) fs::create_directories(a.html);

  std::vector<Summary> summaries(topics.size());
  ParallelFor(topics.size(), c.jobs, [&](std::size_t t) {
    summaries[t] = Summarize(topics[t], CandidatesFor(all, topics[t]), model,
                             *pyramid, dpp::MapOptions{a.fill_budget});
    if (!a.html.empty()) {
      WriteHtml(topics[t], summaries[t].segments,
                fs::path(a.html) / (topics[t].topic_id + ".html"));
    }
  });
  Output out(a.out);
  for (std::size_t t = 0; t < topics.size(); ++t) {
    WriteSegmentList(SegmentList{topics[t].topic_id, summaries[t].segments},
                     out.stream());
  }
  out.Close(a.out);
  return 0;
}

struct EvaluateArgs {
  std::string topics, selections, out = "-";
  int bootstrap = 1000;
  std::uint64_t seed = 0;
  int limit = 100;
  bool no_stem = false;
};

int RunEvaluate(const EvaluateArgs& a, const Common& c) {
  const auto topics = LoadTopics(a.topics);
  const auto selections = LoadSegmentLists(a.selections);
  RougeOptions opts;
  opts.stem = !a.no_stem;
  opts.limit_words = a.limit;

  std::vector<const Topic*> scored;
  for (const auto& sel : selections) {
    const Topic* topic = nullptr;
    for (const auto& t : topics) {
      if (t.topic_id == sel.topic_id) topic = &t;
    }
    if (topic == nullptr) {
      throw Error("selection for unknown topic " + sel.topic_id);
    }
    if (topic->references.empty()) {
      throw Error("topic " + sel.topic_id + " has no reference summaries");
    }
    scored.push_back(topic);
  }
  for (const auto& t : topics) {
    if (FindTopic(selections, t.topic_id) == nullptr) {
      Warn("no selection for topic " + t.topic_id + "; not scored");
    }
  }

  std::vector<RougeScores> per_topic(selections.size());
  ParallelFor(selections.size(), c.jobs, [&](std::size_t k) {
    const Topic& topic = *scored[k];
    std::vector<Token> summary;
    for (const auto& ref : selections[k].segments) {
      const Sentence& s = topic.Resolve(ref);
      summary.insert(summary.end(), s.tokens.begin() + ref.first,
                     s.tokens.begin() + ref.last + 1);
    }
    per_topic[k] = ReferenceSet(topic.references, opts).Score(summary);
  });
  if (per_topic.size() < 2 && a.bootstrap > 0) {
    Warn("fewer than two topics; confidence intervals omitted");
  }
  const RougeReport report = Aggregate(per_topic, a.bootstrap, a.seed);

  ordered_json j;
  for (int m = 0; m < 3; ++m) {
    ordered_json item;
    item["p"] = report.mean[m].p;
    item["r"] = report.mean[m].r;
    item["f"] = report.mean[m].f;
    if (report.ci) {
      item["ci95"] = {(*report.ci)[m].f.low, (*report.ci)[m].f.high};
    }
    j[kMetricNames[m]] = item;
  }
  j["topics"] = report.topics;
  j["n_bootstrap"] = report.ci ? report.n_bootstrap : 0;
  j["seed"] = report.seed;
  j["stem"] = opts.stem;
  j["limit_words"] = opts.limit_words;
  Output out(a.out);
  out.stream() << j.dump(2) << "\n";
  out.Close(a.out);
  return 0;
}

struct StatsArgs {
  std::string topics, candidates, out = "-";
};

int RunStats(const StatsArgs& a, const Common& c) {
  const auto topics = LoadTopics(a.topics);
  std::vector<TopicCandidates> all;
  if (!a.candidates.empty()) {
    all = LoadCandidates(a.candidates);
  } else {
    const FallbackScoreSource source(FallbackBoundaryModel::Train(topics, 1.0));
    all.resize(topics.size());
    ParallelFor(topics.size(), c.jobs, [&](std::size_t t) {
      all[t] = TopicCandidates{topics[t].topic_id,
                               SegmentTopic(topics[t], source, {})};
    });
  }
  const CorpusStats st = ComputeStats(topics, all);
  ordered_json j;
  j["topics"] = st.topics;
  j["documents"] = st.documents;
  j["sentences"] = st.sentences;
  j["words"] = st.words;
  j["segments"] = st.segments;
  j["segment_words"] = st.segment_words;
  j["words_per_segment"] = st.words_per_segment;
  j["segments_per_sentence"] = st.segments_per_sentence;
  Output out(a.out);
  out.stream() << j.dump(2) << "\n";
  out.Close(a.out);
  return 0;
}

struct PairsArgs {
  std::string topics, out = "-";
};

int RunPyramidPairs(const PairsArgs& a) {
  const auto topics = LoadTopics(a.topics);
  Output out(a.out);
  for (const auto& topic : topics) {
    std::vector<std::string> summary;
    for (const auto& ref : topic.references) {
      for (auto& s : SplitSentences(ref.text)) summary.push_back(std::move(s));
    }
    for (const auto& doc : topic.documents) {
      std::vector<std::string> article;
      for (const auto& s : doc.sentences) article.push_back(s.text);
      if (article.empty()) continue;
      for (const auto& p : BuildPyramidPairs(article, summary)) {
        ordered_json j;
        j["topic_id"] = topic.topic_id;
        j["doc_id"] = doc.doc_id;
        j["label"] = p.positive ? "positive" : "negative";
        j["summary_tokens"] = p.summary_sentence;
        j["paragraph_tokens"] = p.paragraph;
        j["paragraph_sentences"] = p.paragraph_sentences;
        out.stream() << j.dump() << "\n";
      }
    }
  }
  out.Close(a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-sentence highlight extraction"};
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1);

  Common common;
  app.add_option("--jobs", common.jobs, "Topics processed in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--scorer-url", common.scorer_url,
                 "Scoring service base URL (HILITE_SCORER_URL overrides)")
      ->capture_default_str();
  app.add_option("--batch-size", common.batch_size, "Requests per HTTP call")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-in-flight", common.max_in_flight,
                 "Concurrent HTTP calls")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--timeout", common.timeout, "HTTP timeout in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  const auto topics_opt = [](CLI::App* sub, std::string& dest) {
    sub->add_option("--topics", dest, "Topic JSONL")->required();
  };
  const auto pyramid_opt = [](CLI::App* sub, std::string& dest) {
    sub->add_option("--pyramid", dest, "Pyramid feature source")
        ->check(CLI::IsMember({"fallback", "service"}))
        ->capture_default_str();
  };

  SegmentArgs seg;
  auto* seg_cmd = app.add_subcommand("segment", "Topics to candidate segments");
  topics_opt(seg_cmd, seg.topics);
  seg_cmd->add_option("--method", seg.method, "Segmentation method")
      ->check(CLI::IsMember({"xlnet-scores", "fallback", "tree"}))
      ->capture_default_str();
  seg_cmd->add_option("--scores", seg.scores,
                      "Score file for xlnet-scores (default: scoring service)");
  seg_cmd->add_option("--parses", seg.parses, "Parse sidecar JSONL for tree");
  seg_cmd->add_option("--min-words", seg.min_words)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seg_cmd->add_option("--max-per-sentence", seg.max_per_sentence)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seg_cmd->add_option("--alpha", seg.alpha, "Fallback smoothing")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seg_cmd->add_option("--out", seg.out)->capture_default_str();

  ScoreArgs score;
  auto* score_cmd =
      app.add_subcommand("score", "Boundary probabilities for spans");
  topics_opt(score_cmd, score.topics);
  score_cmd->add_option("--source", score.source)
      ->check(CLI::IsMember({"http", "fallback"}))
      ->capture_default_str();
  score_cmd->add_option("--cache", score.cache,
                        "Write a score file for every enumerated span");
  score_cmd->add_option("--candidates", score.candidates,
                        "Rescore this candidate file");
  score_cmd->add_option("--min-words", score.min_words)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  score_cmd->add_option("--alpha", score.alpha)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  score_cmd->add_option("--out", score.out)->capture_default_str();

  LabelArgs label;
  auto* label_cmd = app.add_subcommand("label", "Oracle segment labels");
  topics_opt(label_cmd, label.topics);
  label_cmd->add_option("--candidates", label.candidates)->required();
  label_cmd->add_flag("--no-stem", label.no_stem);
  label_cmd->add_option("--out", label.out)->capture_default_str();

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Fit the quality model");
  topics_opt(train_cmd, train.topics);
  train_cmd->add_option("--candidates", train.candidates)->required();
  train_cmd->add_option("--labels", train.labels)->required();
  train_cmd->add_option("--out", train.out, "Model JSON")->required();
  train_cmd->add_option("--lr", train.lr)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--iters", train.iters)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--tol", train.tol)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  train_cmd->add_option("--trace", train.trace,
                        "Write the log-likelihood trace here");
  pyramid_opt(train_cmd, train.pyramid);

  SummarizeArgs summ;
  auto* summ_cmd = app.add_subcommand("summarize", "Select highlights");
  topics_opt(summ_cmd, summ.topics);
  summ_cmd->add_option("--candidates", summ.candidates)->required();
  summ_cmd->add_option("--model", summ.model)->required();
  summ_cmd->add_option("--html", summ.html, "Write <topic>.html files here");
  summ_cmd->add_flag("--fill-budget", summ.fill_budget,
                     "Keep selecting until the word budget is full");
  summ_cmd->add_option("--out", summ.out)->capture_default_str();
  pyramid_opt(summ_cmd, summ.pyramid);

  EvaluateArgs eval;
  auto* eval_cmd = app.add_subcommand("evaluate", "ROUGE against references");
  topics_opt(eval_cmd, eval.topics);
  eval_cmd->add_option("--selections", eval.selections)->required();
  eval_cmd->add_option("--bootstrap", eval.bootstrap, "Resamples, 0 for none")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed)->capture_default_str();
  eval_cmd->add_option("--limit", eval.limit, "Word limit, 0 for none")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  eval_cmd->add_flag("--no-stem", eval.no_stem);
  eval_cmd->add_option("--out", eval.out)->capture_default_str();

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Corpus and segment counts");
  topics_opt(stats_cmd, stats.topics);
  stats_cmd->add_option("--candidates", stats.candidates,
                        "Candidate file (default: fallback segmenter)");
  stats_cmd->add_option("--out", stats.out)->capture_default_str();

  PairsArgs pairs;
  auto* pairs_cmd = app.add_subcommand(
      "pyramid-pairs", "Lead/bottom training pairs for the pyramid classifier");
  topics_opt(pairs_cmd, pairs.topics);
  pairs_cmd->add_option("--out", pairs.out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*seg_cmd) return RunSegment(seg, common);
    if (*score_cmd) return RunScore(score, common);
    if (*label_cmd) return RunLabel(label, common);
    if (*train_cmd) return RunTrain(train, common);
    if (*summ_cmd) return RunSummarize(summ, common);
    if (*eval_cmd) return RunEvaluate(eval, common);
    if (*stats_cmd) return RunStats(stats, common);
    if (*pairs_cmd) return RunPyramidPairs(pairs);
  } catch (const std::exception& e) {
    std::cerr << "hilite: error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
