// Copyright 2026 The PPGNN Authors.
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

#include "ppgnn/trainer.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "json.hpp"
#include "ppgnn/errors.h"
#include "test_util.h"

namespace ppgnn {
namespace {

// One small SBM dataset shared by the suite.
class TrainerTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir();
    SynthSpec spec;
    spec.num_nodes = 600;
    spec.num_classes = 3;
    spec.feature_dim = 12;
    spec.p_intra = 0.03;
    spec.q_inter = 0.003;
    spec.seed = 5;
    GenSynth(spec, dir_->path());
    PreprocessOptions opt;
    opt.hops = 2;
    opt.chunk_rows = 16;
    Preprocess(dir_->path(), opt);
    dataset_ = new PreprocessedDataset(PreprocessedDataset::Open(dir_->path()));
  }
  static void TearDownTestSuite() {
    delete dataset_;
    delete dir_;
  }

  static TrainConfig SmallConfig() {
    TrainConfig c;
    c.model = ModelKind::kSign;
    c.hops = 2;
    c.batch_size = 64;
    c.chunk_rows = 16;
    c.epochs = 5;
    c.hidden = 16;
    c.seed = 3;
    return c;
  }

  static TrainingData Data(TierKind tier, int hops = 2) {
    return TrainingData::Load(*dataset_, hops, tier);
  }

  static testing::TempDir* dir_;
  static PreprocessedDataset* dataset_;
};

testing::TempDir* TrainerTest::dir_ = nullptr;
PreprocessedDataset* TrainerTest::dataset_ = nullptr;

TEST(ConvergencePointTest, Examples) {
  const std::vector<double> a = {0.5, 0.7, 0.99, 1.0};
  EXPECT_EQ(ConvergencePoint(a), 2u);
  const std::vector<double> flat(7, 0.4);
  EXPECT_EQ(ConvergencePoint(flat), 0u);
  std::vector<double> mono;
  for (int e = 0; e < 50; ++e) mono.push_back(1.0 - std::exp(-0.1 * e));
  std::size_t want = 0;
  while (mono[want] < 0.99 * mono.back()) ++want;
  EXPECT_EQ(ConvergencePoint(mono), want);
  EXPECT_THROW(ConvergencePoint(std::vector<double>{}), DataError);
}

TEST(ConvergencePointTest, Property) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> curve(1 + gen() % 30);
    for (double& v : curve) v = u(gen);
    const std::size_t e = ConvergencePoint(curve);
    const double peak = *std::max_element(curve.begin(), curve.end());
    EXPECT_GE(curve[e], 0.99 * peak);
    for (std::size_t i = 0; i < e; ++i) EXPECT_LT(curve[i], 0.99 * peak);
  }
}

TEST(ThroughputTest, Examples) {
  EXPECT_DOUBLE_EQ(Throughput(1000, 10, 5.0), 2000.0);
  EXPECT_THROW(Throughput(1000, 10, 0.0), DataError);
  RunResult r;
  r.train_rows = 10;
  r.epochs = 3;
  r.train_seconds = 0.5;
  EXPECT_DOUBLE_EQ(Throughput(r), 60.0);
}

TEST(AccuracyTest, PerfectAndInvariantToScale) {
  std::mt19937_64 gen(2);
  Matrix<float> logits = testing::RandomMatrix<float>(50, 4, gen);
  std::vector<std::uint32_t> labels;
  for (std::size_t i = 0; i < 50; ++i) {
    labels.push_back(static_cast<std::uint32_t>(
        std::max_element(logits.row(i).begin(), logits.row(i).end()) -
        logits.row(i).begin()));
  }
  EXPECT_EQ(Accuracy(logits, labels), 1.0);
  for (float& v : logits.values()) v *= 7.5f;
  EXPECT_EQ(Accuracy(logits, labels), 1.0);
  labels[0] = (labels[0] + 1) % 4;
  EXPECT_DOUBLE_EQ(Accuracy(logits, labels), 49.0 / 50.0);
}

TEST(AccuracyTest, RandomLabelsNearChance) {
  std::mt19937_64 gen(6);
  const std::size_t n = 20000;
  const Matrix<float> logits = testing::RandomMatrix<float>(n, 2, gen);
  std::vector<std::uint32_t> labels(n);
  for (auto& l : labels) l = static_cast<std::uint32_t>(gen() & 1);
  EXPECT_NEAR(Accuracy(logits, labels), 0.5, 0.05);
}

TEST_F(TrainerTest, EvaluateEmptyRangeFails) {
  const TrainingData data = Data(TierKind::kResident);
  auto out = TrainRun(SmallConfig(), data);
  EXPECT_THROW(Evaluate(*out.model, data, 10, 10), DataError);
  const double whole = Evaluate(*out.model, data, data.train_rows,
                                data.train_rows + data.val_rows);
  const double blocked = Evaluate(*out.model, data, data.train_rows,
                                  data.train_rows + data.val_rows, 7);
  EXPECT_EQ(whole, blocked);
}

TEST_F(TrainerTest, Deterministic) {
  const TrainingData data = Data(TierKind::kResident);
  TrainConfig c = SmallConfig();
  c.dropout = 0.2;
  const auto a = TrainRun(c, data).result;
  const auto b = TrainRun(c, data).result;
  EXPECT_EQ(a.train_loss, b.train_loss);
  EXPECT_EQ(a.val_acc, b.val_acc);
  EXPECT_EQ(a.test_acc, b.test_acc);
  c.seed = 4;
  EXPECT_NE(TrainRun(c, data).result.train_loss, a.train_loss);
}

TEST_F(TrainerTest, LearnsBelowChanceLoss) {
  const TrainingData data = Data(TierKind::kResident);
  for (ModelKind kind : {ModelKind::kSgc, ModelKind::kSign, ModelKind::kHoga}) {
    TrainConfig c = SmallConfig();
    c.model = kind;
    c.epochs = 3;
    const auto r = TrainRun(c, data).result;
    EXPECT_LT(r.train_loss[0], std::log(3.0)) << ModelKindName(kind);
    EXPECT_LT(r.train_loss.back(), r.train_loss.front()) << ModelKindName(kind);
    EXPECT_GT(r.test_acc_at_best, 0.5) << ModelKindName(kind);
  }
}

TEST_F(TrainerTest, CrLossesMatchAcrossTiers) {
  TrainConfig c = SmallConfig();
  c.method = Method::kCR;
  c.dropout = 0.1;
  c.tier = TierKind::kResident;
  const auto resident = TrainRun(c, Data(TierKind::kResident)).result;
  c.tier = TierKind::kStaged;
  const auto staged = TrainRun(c, Data(TierKind::kStaged)).result;
  c.tier = TierKind::kStorage;
  const auto storage = TrainRun(c, Data(TierKind::kStorage)).result;
  EXPECT_EQ(resident.train_loss, staged.train_loss);
  EXPECT_EQ(resident.train_loss, storage.train_loss);
  EXPECT_EQ(resident.val_acc, storage.val_acc);
  c.prefetch = false;
  EXPECT_EQ(TrainRun(c, Data(TierKind::kStorage)).result.train_loss,
            resident.train_loss);
}

TEST_F(TrainerTest, ProfileAccounting) {
  const TrainingData data = Data(TierKind::kStaged);
  TrainConfig c = SmallConfig();
  c.tier = TierKind::kStaged;
  c.model = ModelKind::kHoga;
  c.epochs = 4;
  c.inject_assemble_us = 200;
  c.inject_compute_us = 200;
  const auto r = TrainRun(c, data).result;
  ASSERT_EQ(r.profiles.size(), 4u);
  double component_train_ms = 0;
  for (const auto& p : r.profiles) {
    const double ratio = p.ComponentSumMs() / p.total_ms;
    EXPECT_GE(ratio, 0.8);
    EXPECT_LE(ratio, 1.0);
    EXPECT_GT(p.compute_inject_ms, 0.0);
    EXPECT_GT(p.bytes_transferred, 0u);
    component_train_ms += p.ComponentSumMs() - p.eval_ms;
  }
  const double from_profiles =
      Throughput(r.train_rows, r.epochs, component_train_ms / 1e3);
  EXPECT_NEAR(Throughput(r) / from_profiles, 1.0, 0.05);
}

TEST_F(TrainerTest, EvalEverySchedule) {
  const TrainingData data = Data(TierKind::kResident);
  TrainConfig c = SmallConfig();
  c.epochs = 7;
  c.eval_every = 3;
  const auto r = TrainRun(c, data).result;
  EXPECT_EQ(r.eval_epochs, (std::vector<int>{2, 5, 6}));
  EXPECT_EQ(r.val_acc.size(), 3u);
  EXPECT_EQ(r.train_loss.size(), 7u);
  EXPECT_EQ(r.profiles[0].eval_ms, 0.0);
}

TEST_F(TrainerTest, NdjsonLog) {
  const TrainingData data = Data(TierKind::kResident);
  TrainConfig c = SmallConfig();
  c.epochs = 3;
  c.eval_every = 2;
  c.log_path = dir_->path() / "run.ndjson";
  const auto r = TrainRun(c, data).result;
  std::ifstream in(c.log_path);
  std::string line;
  std::vector<nlohmann::json> records;
  while (std::getline(in, line)) records.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(records.size(), 4u);
  for (int e = 0; e < 3; ++e) {
    EXPECT_EQ(records[e]["epoch"], e);
    EXPECT_EQ(records[e]["loss"].get<double>(), r.train_loss[e]);
    EXPECT_TRUE(records[e]["profile"].contains("total_ms"));
  }
  EXPECT_TRUE(records[0]["val_acc"].is_null());
  EXPECT_TRUE(records[1]["val_acc"].is_number());
  EXPECT_TRUE(records[3]["summary"].get<bool>());
  EXPECT_EQ(records[3]["test_acc"].get<double>(), r.test_acc_at_best);
}

TEST_F(TrainerTest, DataMismatchRejected) {
  TrainConfig c = SmallConfig();
  c.hops = 1;
  EXPECT_THROW(TrainRun(c, Data(TierKind::kResident)), Error);
  EXPECT_THROW(TrainingData::Load(*dataset_, 3, TierKind::kResident), Error);
}

TEST(TrainConfigTest, Validation) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.tier = TierKind::kStorage;
  EXPECT_THROW(c.Validate(), ConfigError);
  c.method = Method::kCR;
  EXPECT_NO_THROW(c.Validate());
  c.chunk_rows = static_cast<std::uint32_t>(c.batch_size + 1);
  EXPECT_THROW(c.Validate(), ConfigError);
  c = TrainConfig{};
  c.epochs = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = TrainConfig{};
  c.lr = -1;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = TrainConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = TrainConfig{};
  c.eval_every = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

TEST(SeedTest, DropoutSeedsDistinct) {
  std::set<std::uint64_t> seen;
  for (int e = 0; e < 10; ++e) {
    for (std::size_t b = 0; b < 10; ++b) seen.insert(DropoutSeed(1, e, b));
  }
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_EQ(EpochSeed(8, 3), 11u);
}

}  // namespace
}  // namespace ppgnn
