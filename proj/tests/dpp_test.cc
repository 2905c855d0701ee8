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

#include "hilite/dpp.h"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <filesystem>
#include <random>

#include "hilite/error.h"
#include "test_oracles.h"

namespace hilite::dpp {
namespace {

using hilite::testing::BruteForceBestSubset;
using hilite::testing::MaskToSubset;
using hilite::testing::NaiveDet;
using hilite::testing::Pick;
using hilite::testing::RandomGaussian;
using hilite::testing::RandomPsd;
using hilite::testing::RandomSimilarity;

double MinEigen(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd M2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

TEST(BuildEnsembleTest, Examples) {
  EXPECT_EQ(BuildEnsemble(Eigen::Vector2d(1, 1), Eigen::MatrixXd::Identity(2, 2)),
            Eigen::MatrixXd::Identity(2, 2));
  EXPECT_EQ(BuildEnsemble(Eigen::Vector2d(2, 3), M2(1, 0.5, 0.5, 1)), M2(4, 3, 3, 9));
}

TEST(BuildEnsembleTest, Errors) {
  EXPECT_THROW(BuildEnsemble(Eigen::Vector3d(1, 1, 1), Eigen::MatrixXd::Identity(2, 2)),
               std::invalid_argument);
  EXPECT_THROW(BuildEnsemble(Eigen::Vector2d(1, 0), Eigen::MatrixXd::Identity(2, 2)),
               std::invalid_argument);
}

TEST(BuildEnsembleTest, RandomIsPsd) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 6;
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) q(i) = u(rng);
    const auto l = BuildEnsemble(q, RandomSimilarity(n, 3, rng));
    ASSERT_EQ(l, l.transpose());
    for (int i = 0; i < n; ++i) ASSERT_NEAR(l(i, i), q(i) * q(i), 1e-12);
    ASSERT_GE(MinEigen(l), -1e-8);
  }
}

TEST(SubsetLogProbTest, Examples) {
  const std::vector<int> y0 = {0}, y01 = {0, 1}, none;
  EXPECT_NEAR(SubsetLogProb(Eigen::MatrixXd::Identity(2, 2), y0), std::log(0.25), 1e-12);
  const auto l = M2(2, 1, 1, 2);
  // Oracle determinants of L and L + I.
  const double det_l = NaiveDet(l);
  const double det_li = NaiveDet(l + Eigen::MatrixXd::Identity(2, 2));
  EXPECT_NEAR(det_l, 3.0, 1e-12);
  EXPECT_NEAR(det_li, 8.0, 1e-12);
  EXPECT_NEAR(SubsetLogProb(l, y01), std::log(det_l / det_li), 1e-12);
  EXPECT_NEAR(SubsetLogProb(l, none), -std::log(det_li), 1e-12);
}

TEST(SubsetLogProbTest, SingularGivesSentinel) {
  const std::vector<int> y = {0, 1};
  EXPECT_EQ(SubsetLogProb(M2(1, 1, 1, 1), y), kNegInf);
  EXPECT_EQ(LogDet(M2(1, 2, 2, 1)), kNegInf);
  EXPECT_EQ(LogDet(Eigen::MatrixXd(0, 0)), 0.0);
}

TEST(SubsetLogProbTest, Normalization) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 10;
    const auto l = RandomPsd(n, rng);
    double total = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      const auto y = MaskToSubset(mask, n);
      const double lp = SubsetLogProb(l, y);
      if (lp != kNegInf) total += std::exp(lp);
    }
    EXPECT_NEAR(total, 1.0, 1e-9) << "n=" << n;
  }
}

TEST(SubsetLogProbTest, MatchesBruteForceRatio) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const auto l = RandomPsd(n, rng);
    const double z = NaiveDet(l + Eigen::MatrixXd::Identity(n, n));
    const unsigned mask = static_cast<unsigned>(rng() % (1u << n));
    const auto y = MaskToSubset(mask, n);
    const double expected = y.empty() ? 1.0 / z : NaiveDet(Pick(l, y)) / z;
    EXPECT_NEAR(std::exp(SubsetLogProb(l, y)), expected, 1e-9);
  }
}

TEST(MarginalKernelTest, IdentityGivesHalf) {
  EXPECT_LE((MarginalKernel(Eigen::MatrixXd::Identity(3, 3)) -
             0.5 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(MarginalKernelTest, DiagonalIsInclusionProbability) {
  std::mt19937_64 rng(4);
  const int n = 5;
  const auto l = RandomPsd(n, rng);
  const auto k = MarginalKernel(l);
  for (int i = 0; i < n; ++i) {
    double p = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (!(mask & (1u << i))) continue;
      p += std::exp(SubsetLogProb(l, MaskToSubset(mask, n)));
    }
    EXPECT_NEAR(k(i, i), p, 1e-9);
  }
}

// ---------------------------------------------------------------------------

Instance RandomInstance(int n, int d, std::mt19937_64& rng) {
  Instance inst;
  inst.features = 0.5 * RandomGaussian(n, d, rng);
  inst.similarity = RandomSimilarity(n, n + 1, rng);
  for (int i = 0; i < n; ++i) {
    if (rng() % 2 == 0) inst.selected.push_back(i);
  }
  if (inst.selected.empty()) inst.selected.push_back(0);
  return inst;
}

TEST(LikelihoodTest, ZeroInstances) {
  EXPECT_EQ(LogLikelihood(QualityModel::Zero(3, 0), {}), 0.0);
}

TEST(LikelihoodTest, ZeroThetaReducesToS) {
  std::mt19937_64 rng(5);
  const Instance inst = RandomInstance(5, 3, rng);
  const double expected =
      std::log(NaiveDet(Pick(inst.similarity, inst.selected))) -
      std::log(NaiveDet(inst.similarity + Eigen::MatrixXd::Identity(5, 5)));
  EXPECT_NEAR(LogLikelihood(QualityModel::Zero(3, 0), std::span(&inst, 1)), expected, 1e-10);
}

TEST(LikelihoodTest, RandomMatchesBruteForce) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 7, d = 4;
    const Instance inst = RandomInstance(n, d, rng);
    const QualityModel model(0.3 * RandomGaussian(d, 1, rng).col(0), 0);
    const Eigen::VectorXd f_theta = inst.features * model.theta();
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) q(i) = std::exp(0.5 * f_theta(i));
    Eigen::MatrixXd l(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) l(i, j) = q(i) * inst.similarity(i, j) * q(j);
    }
    const double ratio = NaiveDet(Pick(l, inst.selected)) /
                         NaiveDet(l + Eigen::MatrixXd::Identity(n, n));
    const double v = LogLikelihood(model, std::span(&inst, 1));
    EXPECT_LE(std::exp(v), 1.0);
    EXPECT_NEAR(std::exp(v), ratio, 1e-9 * std::max(1.0, ratio));
  }
}

TEST(GradientTest, HandComputed) {
  Instance inst;
  inst.features = Eigen::MatrixXd::Identity(3, 3);
  inst.similarity = Eigen::MatrixXd::Identity(3, 3);
  inst.selected = {0};
  const auto ev = Evaluate(QualityModel::Zero(3, 0), std::span(&inst, 1));
  EXPECT_NEAR(ev.gradient(0), 0.5, 1e-12);
  EXPECT_NEAR(ev.gradient(1), -0.5, 1e-12);
  EXPECT_NEAR(ev.gradient(2), -0.5, 1e-12);
  EXPECT_EQ(ev.skipped, 0);
}

TEST(GradientTest, SaturationLimit) {
  std::mt19937_64 rng(8);
  Instance inst = RandomInstance(4, 4, rng);
  inst.features = Eigen::MatrixXd::Identity(4, 4);
  inst.similarity = Eigen::MatrixXd::Identity(4, 4);
  inst.selected = {0, 1, 2, 3};
  const QualityModel big(Eigen::VectorXd::Constant(4, 30.0), 0);
  const auto ev = Evaluate(big, std::span(&inst, 1));
  EXPECT_LT(ev.gradient.cwiseAbs().maxCoeff(), 1e-10);
}

TEST(GradientTest, MatchesFiniteDifferences) {
  std::mt19937_64 rng(9);
  const double h = 1e-5;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 6, d = 1 + trial % 6;
    const Instance inst = RandomInstance(n, d, rng);
    QualityModel model(0.3 * RandomGaussian(d, 1, rng).col(0), 0);
    const auto ev = Evaluate(model, std::span(&inst, 1));
    for (int k = 0; k < d; ++k) {
      QualityModel plus = model, minus = model;
      plus.mutable_theta()(k) += h;
      minus.mutable_theta()(k) -= h;
      const double fd = (LogLikelihood(plus, std::span(&inst, 1)) -
                         LogLikelihood(minus, std::span(&inst, 1))) / (2 * h);
      const double rel = std::abs(fd - ev.gradient(k)) /
                         std::max({std::abs(fd), std::abs(ev.gradient(k)), 1e-3});
      EXPECT_LT(rel, 1e-5) << "trial " << trial << " k " << k;
    }
  }
}

TEST(GradientTest, SingularInstanceSkipped) {
  Instance inst;
  inst.features = Eigen::MatrixXd::Identity(2, 2);
  inst.similarity = Eigen::MatrixXd::Ones(2, 2);
  inst.selected = {0, 1};
  const auto ev = Evaluate(QualityModel::Zero(2, 0), std::span(&inst, 1));
  EXPECT_EQ(ev.skipped, 1);
  EXPECT_EQ(ev.log_likelihood, 0.0);
  EXPECT_EQ(ev.gradient, Eigen::VectorXd::Zero(2));
}

// ---------------------------------------------------------------------------

TEST(ProjectPsdTest, HandFixture) {
  const auto p = ProjectPsd(M2(1, 2, 2, 1));
  EXPECT_LE((p - M2(1.5, 1.5, 1.5, 1.5)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ProjectPsdTest, FixedPointAndIdempotent) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 8;
    const auto psd = RandomPsd(n, rng);
    EXPECT_LE((ProjectPsd(psd) - psd).cwiseAbs().maxCoeff(), 1e-10);
    Eigen::MatrixXd s = RandomGaussian(n, n, rng);
    s = 0.5 * (s + s.transpose());
    const auto once = ProjectPsd(s);
    EXPECT_LE((ProjectPsd(once) - once).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_GE(MinEigen(once), -1e-10);
    // No sampled PSD matrix is closer to s than its projection.
    for (int k = 0; k < 20; ++k) {
      const auto other = RandomPsd(n, rng);
      EXPECT_LE((once - s).norm(), (other - s).norm() + 1e-12);
    }
  }
}

// ---------------------------------------------------------------------------

TEST(TrainTest, ZeroLearningRateKeepsZero) {
  std::mt19937_64 rng(11);
  std::vector<Instance> inst = {RandomInstance(5, 3, rng)};
  TrainConfig cfg;
  cfg.learning_rate = 0.0;
  cfg.max_iters = 5;
  const auto r = Train(inst, cfg);
  EXPECT_EQ(r.model.theta(), Eigen::VectorXd::Zero(3));
}

TEST(TrainTest, MonotoneTraceOnFiveInstances) {
  std::mt19937_64 rng(12);
  std::vector<Instance> inst;
  for (int k = 0; k < 5; ++k) inst.push_back(RandomInstance(6, 4, rng));
  TrainConfig cfg;
  cfg.learning_rate = 0.05;
  const auto r = Train(inst, cfg);
  ASSERT_GE(r.trace.size(), 2u);
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    EXPECT_GE(r.trace[k], r.trace[k - 1] - 1e-9) << k;
  }
  EXPECT_NEAR(r.trace.front(), LogLikelihood(QualityModel::Zero(4, 0), inst), 1e-12);
}

TEST(TrainTest, PlantedSingletonRecovered) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6, d = 6;
    Instance inst;
    inst.features = RandomGaussian(n, d, rng);
    inst.similarity = Eigen::MatrixXd::Identity(n, n);
    const int planted = static_cast<int>(rng() % n);
    inst.selected = {planted};
    TrainConfig cfg;
    cfg.max_iters = 300;
    const auto r = Train(std::span(&inst, 1), cfg);
    const Eigen::VectorXd q = r.model.Quality(inst.features);
    Eigen::Index best;
    q.maxCoeff(&best);
    EXPECT_EQ(best, planted) << trial;
  }
}

TEST(TrainTest, ConvergesWithLooseTolerance) {
  std::mt19937_64 rng(14);
  std::vector<Instance> inst = {RandomInstance(4, 2, rng)};
  TrainConfig cfg;
  cfg.tol = 10.0;
  const auto r = Train(inst, cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.trace.size(), 1u);
}

TEST(TrainTest, HugeStepAborts) {
  std::mt19937_64 rng(15);
  std::vector<Instance> inst;
  for (int k = 0; k < 3; ++k) inst.push_back(RandomInstance(6, 4, rng));
  TrainConfig cfg;
  cfg.learning_rate = 50.0;
  cfg.max_iters = 500;
  cfg.tol = 0.0;
  EXPECT_THROW(Train(inst, cfg), Error);
}

TEST(TrainTest, NoInstances) {
  EXPECT_THROW(Train({}, TrainConfig{}), Error);
}

// ---------------------------------------------------------------------------

TEST(MapSelectTest, DiagonalPicksLargest) {
  Eigen::VectorXd diag(6);
  diag << 2.0, 5.0, 1.5, 7.0, 3.0, 0.5;
  const Eigen::MatrixXd l = diag.asDiagonal();
  const std::vector<int> words(6, 10);
  const auto r = MapSelect(l, words, 30);
  std::vector<int> got = r.selected;
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<int>{1, 3, 4}));
  EXPECT_EQ(r.selected.front(), 3);
  EXPECT_NEAR(r.gains.front(), std::log(7.0), 1e-12);
  EXPECT_EQ(r.words, 30);
}

TEST(MapSelectTest, DuplicatesRepel) {
  const Eigen::MatrixXd l = 4.0 * Eigen::MatrixXd::Ones(2, 2);
  const std::vector<int> words = {5, 5};
  EXPECT_EQ(MapSelect(l, words, 100).selected.size(), 1u);
  MapOptions fill;
  fill.fill_budget = true;
  EXPECT_EQ(MapSelect(l, words, 100, fill).selected.size(), 1u);
}

TEST(MapSelectTest, BudgetRespected) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 10;
    const Eigen::MatrixXd l = 4.0 * RandomPsd(n, rng);
    std::vector<int> words(static_cast<std::size_t>(n));
    for (auto& w : words) w = 1 + static_cast<int>(rng() % 30);
    const int budget = 10 + static_cast<int>(rng() % 60);
    for (bool fill : {false, true}) {
      const auto r = MapSelect(l, words, budget, MapOptions{fill});
      int total = 0;
      for (int i : r.selected) total += words[static_cast<std::size_t>(i)];
      EXPECT_LE(total, budget);
      EXPECT_EQ(total, r.words);
      if (!fill) {
        for (double g : r.gains) EXPECT_GT(g, 0.0);
      }
    }
  }
}

TEST(MapSelectTest, EverythingTooLong) {
  const std::vector<int> words = {50, 60};
  EXPECT_TRUE(MapSelect(Eigen::MatrixXd::Identity(2, 2) * 3, words, 40).selected.empty());
  EXPECT_THROW(MapSelect(Eigen::MatrixXd::Identity(2, 2), words, 0), std::invalid_argument);
}

TEST(MapSelectTest, TieGoesToLowerIndex) {
  const std::vector<int> words = {1, 1, 1};
  const auto r = MapSelect(2.0 * Eigen::MatrixXd::Identity(3, 3), words, 1);
  EXPECT_EQ(r.selected, (std::vector<int>{0}));
}

TEST(MapSelectTest, GainsMatchLogDet) {
  std::mt19937_64 rng(17);
  const Eigen::MatrixXd l = 5.0 * RandomPsd(8, rng);
  const std::vector<int> words(8, 1);
  const auto r = MapSelect(l, words, 8);
  std::vector<int> prefix;
  double prev = 0.0;
  for (std::size_t k = 0; k < r.selected.size(); ++k) {
    prefix.push_back(r.selected[k]);
    const double ld = std::log(NaiveDet(Pick(l, prefix)));
    EXPECT_NEAR(r.gains[k], ld - prev, 1e-8);
    prev = ld;
  }
}

TEST(MapSelectTest, NeverBeatsBruteForceAndUsuallyMatches) {
  std::mt19937_64 rng(18);
  int optimal = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 2 + trial % 11;
    const Eigen::MatrixXd l = 3.0 * RandomPsd(n, rng);
    const std::vector<int> words(static_cast<std::size_t>(n), 1);
    const auto r = MapSelect(l, words, n);
    const double greedy = r.selected.empty() ? 0.0 : std::log(NaiveDet(Pick(l, r.selected)));
    const auto bf = BruteForceBestSubset(l, words, n);
    EXPECT_LE(greedy, bf.best + 1e-9);
    if (greedy >= bf.best - 1e-9) ++optimal;
  }
  EXPECT_GE(optimal, trials * 7 / 10);
}

TEST(MapSelectTest, UniformScalingKeepsFirstPick) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 6;
    const auto s = RandomSimilarity(n, 4, rng);
    Eigen::VectorXd q = (RandomGaussian(n, 1, rng).col(0).array().exp()).matrix();
    const std::vector<int> words(n, 1);
    const auto a = MapSelect(BuildEnsemble(q, s), words, 1);
    const auto b = MapSelect(BuildEnsemble(q * 40.0, s), words, 1);
    if (a.selected.empty()) continue;
    EXPECT_EQ(a.selected, b.selected);
  }
}

// ---------------------------------------------------------------------------

TEST(QualityModelTest, JsonRoundTrip) {
  Eigen::VectorXd theta(4);
  theta << 0.1, -2.5, 1e-17, 3.0;
  const QualityModel m(theta, 2);
  const auto back = QualityModel::FromJson(m.ToJson());
  EXPECT_EQ(back.theta(), m.theta());
  EXPECT_EQ(back.pyramid_dim(), 2);
  const auto path = std::filesystem::temp_directory_path() / "hilite_model_test.json";
  m.Save(path);
  EXPECT_EQ(QualityModel::Load(path).theta(), theta);
  std::filesystem::remove(path);
}

TEST(QualityModelTest, RejectsBadJson) {
  EXPECT_THROW(QualityModel::FromJson("{"), ParseError);
  EXPECT_THROW(QualityModel::FromJson(R"({"theta":[1,2],"feature_dim":3,"pyramid_dim":0,"format_version":1})"),
               Error);
  EXPECT_THROW(QualityModel::FromJson(R"({"theta":[1,2],"feature_dim":2,"pyramid_dim":0,"format_version":9})"),
               Error);
}

TEST(QualityModelTest, QualityWidthMismatch) {
  const auto m = QualityModel::Zero(3, 0);
  EXPECT_THROW(m.Quality(Eigen::MatrixXd::Ones(2, 4)), ConfigError);
  EXPECT_EQ(m.Quality(Eigen::MatrixXd::Ones(2, 3)), Eigen::VectorXd::Ones(2));
}

}  // namespace
}  // namespace hilite::dpp
