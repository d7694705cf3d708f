// Copyright 2026 The GlobalDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "globaldp/linear_model.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "globaldp/errors.h"
#include "globaldp/rng.h"
#include "gtest/gtest.h"
#include "test_paths.h"

namespace globaldp {
namespace {

std::vector<LabeledExample> ToySeparable() {
  // Positive class has x0 > x1, negative has x0 < x1, margin 0.2.
  std::vector<LabeledExample> data;
  Rng rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (data.size() < 60) {
    const double a = u(rng), b = u(rng);
    if (std::abs(a - b) < 0.2) continue;
    data.push_back({{a, b}, a > b ? 1 : -1});
  }
  return data;
}

TEST(HingeObjectiveTest, ZeroModelGivesOne) {
  const std::vector<LabeledExample> data = {{{0.2, 0.4}, 1}, {{0.9, 0.1}, -1}};
  EXPECT_DOUBLE_EQ(HingeObjective(ModelVector::Zeros(2), data, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(HingeObjective(ModelVector::Zeros(2), data, 5.0), 1.0);
}

TEST(HingeObjectiveTest, SeparatingModelHasZeroHinge) {
  const std::vector<LabeledExample> data = {{{1.0}, 1}, {{-1.0}, -1}};
  EXPECT_DOUBLE_EQ(HingeObjective(ModelVector{2.0, 0.0}, data, 0.0), 0.0);
  // 0.5 * lambda * ||w||^2 with the bias left out.
  // Second example has margin -1, hinge 2; mean hinge 1.
  EXPECT_DOUBLE_EQ(HingeObjective(ModelVector{2.0, 3.0}, data, 0.1), 1.0 + 0.2);
}

TEST(HingeObjectiveTest, SingleExampleHalfMargin) {
  const std::vector<LabeledExample> data = {{{1.0, 0.0}, 1}};
  EXPECT_DOUBLE_EQ(HingeObjective(ModelVector{0.5, 0.0, 0.0}, data, 0.0), 0.5);
}

TEST(HingeObjectiveTest, RejectsEmptyAndMismatchedData) {
  const std::vector<LabeledExample> empty;
  EXPECT_THROW(HingeObjective(ModelVector::Zeros(2), empty, 0.0), DomainError);
  const std::vector<LabeledExample> bad = {{{1.0, 2.0, 3.0}, 1}};
  EXPECT_THROW(HingeObjective(ModelVector::Zeros(2), bad, 0.0), DomainError);
  EXPECT_THROW(HingeSubgradient(ModelVector::Zeros(2), bad[0], 0.0),
               DomainError);
  EXPECT_THROW(Evaluate(ModelVector::Zeros(2), empty), DomainError);
  Rng rng(1);
  EXPECT_THROW(LocalTrain(ModelVector::Zeros(2), empty, TrainConfig{}, rng),
               DomainError);
}

TEST(HingeSubgradientTest, MatchesFiniteDifferences) {
  Rng rng(17);
  std::normal_distribution<double> n(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ModelVector w(std::vector<double>(5));
    for (double& v : w.values()) v = n(rng);
    LabeledExample ex{{n(rng), n(rng), n(rng), n(rng)}, trial % 2 ? 1 : -1};
    const double margin = ex.label * Decision(w, ex.features);
    if (std::abs(1.0 - margin) < 1e-3) continue;  // kink
    const std::vector<LabeledExample> one = {ex};
    const double lambda = 0.3;
    const ModelVector g = HingeSubgradient(w, ex, lambda);
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double h = 1e-6;
      ModelVector hi = w, lo = w;
      hi[j] += h;
      lo[j] -= h;
      const double fd =
          (HingeObjective(hi, one, lambda) - HingeObjective(lo, one, lambda)) /
          (2 * h);
      EXPECT_NEAR(g[j], fd, 1e-5) << "trial " << trial << " coord " << j;
    }
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(LocalTrainTest, SeparatesToyData) {
  const auto data = ToySeparable();
  TrainConfig cfg;
  cfg.local_epochs = 50;
  cfg.learning_rate = 0.1;
  cfg.lr_decay = 1.0;
  cfg.l2_lambda = 0.0;
  Rng rng(3);
  const ModelVector w = LocalTrain(ModelVector::Zeros(2), data, cfg, rng);
  EXPECT_EQ(Evaluate(w, data).accuracy, 1.0);
}

TEST(LocalTrainTest, SeparatesTwoPointSet) {
  std::vector<double> pos(9, 0.0), neg(9, 0.0);
  pos[0] = 0.9;
  neg[0] = 0.1;
  const std::vector<LabeledExample> data = {{pos, 1}, {neg, -1}};
  TrainConfig cfg;
  cfg.local_epochs = 50;
  cfg.learning_rate = 0.5;
  cfg.lr_decay = 1.0;
  cfg.l2_lambda = 0.0;
  Rng rng(0);
  const ModelVector w = LocalTrain(ModelVector::Zeros(9), data, cfg, rng);
  EXPECT_EQ(Evaluate(w, data).accuracy, 1.0);
}

TEST(LocalTrainTest, TinyStepLeavesModelInPlace) {
  const auto data = ToySeparable();
  TrainConfig cfg;
  cfg.learning_rate = 1e-300;
  const ModelVector start{0.3, -0.2, 0.1};
  Rng rng(9);
  const ModelVector w = LocalTrain(start, data, cfg, rng);
  for (std::size_t j = 0; j < w.size(); ++j) EXPECT_NEAR(w[j], start[j], 1e-9);
}

TEST(LocalTrainTest, DeterministicGivenStream) {
  const auto data = ToySeparable();
  Rng a = MakeStream(7, Stream::kLocalTrain, 2, 4);
  Rng b = MakeStream(7, Stream::kLocalTrain, 2, 4);
  EXPECT_EQ(LocalTrain(ModelVector::Zeros(2), data, TrainConfig{}, a),
            LocalTrain(ModelVector::Zeros(2), data, TrainConfig{}, b));
  Rng c = MakeStream(7, Stream::kLocalTrain, 2, 5);
  EXPECT_NE(LocalTrain(ModelVector::Zeros(2), data, TrainConfig{}, c),
            LocalTrain(ModelVector::Zeros(2), data, TrainConfig{}, a));
}

TEST(LocalTrainTest, ObjectiveDecreasesOnRealData) {
  const auto clean =
      CleanAndNormalize(ParseBcwd(testing::BcwdPath())).examples;
  const TrainConfig cfg;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto split = SplitAndPartition(clean, 1, 0.2, seed);
    const auto& train = split.shards[0].train;
    const double before = HingeObjective(ModelVector::Zeros(9), train,
                                         cfg.l2_lambda);
    Rng rng = MakeStream(seed, Stream::kLocalTrain, 1, 1);
    const ModelVector w = LocalTrain(ModelVector::Zeros(9), train, cfg, rng);
    EXPECT_LT(HingeObjective(w, train, cfg.l2_lambda), before) << seed;
  }
}

TEST(LocalTrainTest, RejectsBadConfig) {
  const auto data = ToySeparable();
  Rng rng(1);
  TrainConfig cfg;
  cfg.local_epochs = 0;
  EXPECT_THROW(LocalTrain(ModelVector::Zeros(2), data, cfg, rng), ConfigError);
  cfg = TrainConfig{};
  cfg.lr_decay = 1.5;
  EXPECT_THROW(LocalTrain(ModelVector::Zeros(2), data, cfg, rng), ConfigError);
}

TEST(EvaluateTest, ZeroModelPredictsMalignant) {
  const auto clean =
      CleanAndNormalize(ParseBcwd(testing::BcwdPath())).examples;
  const auto m = Evaluate(ModelVector::Zeros(9), clean);
  EXPECT_DOUBLE_EQ(m.accuracy, 239.0 / 683.0);
  EXPECT_DOUBLE_EQ(m.hinge_loss, 1.0);
  EXPECT_EQ(m.n_examples, 683u);
  EXPECT_EQ(m.correct, 239u);
}

TEST(EvaluateTest, PermutationInvariant) {
  auto data = ToySeparable();
  const ModelVector w{1.0, -0.5, 0.1};
  const auto before = Evaluate(w, data);
  std::reverse(data.begin(), data.end());
  Rng rng(2);
  std::shuffle(data.begin(), data.end(), rng);
  const auto after = Evaluate(w, data);
  EXPECT_EQ(before.correct, after.correct);
  EXPECT_NEAR(before.hinge_loss, after.hinge_loss, 1e-12);
}

TEST(LeakageDemoTest, ZeroModel) {
  const std::vector<double> w = {0.0, 0.0, 0.0};
  const std::vector<double> x = {1.0, 2.0, 3.0};
  const auto r = LeakageDemo(w, x, 2.0);
  EXPECT_EQ(r.gradient, (std::vector<double>{2.0, 4.0, 6.0}));
  EXPECT_DOUBLE_EQ(r.cosine, 1.0);
}

TEST(LeakageDemoTest, NegativeResidualStillParallel) {
  const std::vector<double> w = {1.0, 1.0};
  const std::vector<double> x = {0.5, -2.0};
  const auto r = LeakageDemo(w, x, 3.0);  // residual 3 - (-1.5) = 4.5
  EXPECT_DOUBLE_EQ(r.gradient[0], 2.25);
  EXPECT_DOUBLE_EQ(r.gradient[1], -9.0);
  EXPECT_NEAR(r.cosine, 1.0, 1e-12);
}

TEST(LeakageDemoTest, ExactFitGivesZeroGradient) {
  const std::vector<double> w = {1.0, 2.0};
  const std::vector<double> x = {1.0, 1.0};
  const auto r = LeakageDemo(w, x, 3.0);
  EXPECT_EQ(r.gradient, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(r.cosine, 0.0);
}

TEST(LeakageDemoTest, RejectsZeroInputAndSizeMismatch) {
  const std::vector<double> w = {1.0, 2.0};
  EXPECT_THROW(LeakageDemo(w, std::vector<double>{0.0, 0.0}, 1.0), DomainError);
  EXPECT_THROW(LeakageDemo(w, std::vector<double>{1.0}, 1.0), DomainError);
}

}  // namespace
}  // namespace globaldp
