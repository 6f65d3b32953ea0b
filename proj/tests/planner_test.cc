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

#include "ppgnn/planner.h"

#include <gtest/gtest.h>

#include <filesystem>

#include "ppgnn/errors.h"
#include "test_util.h"

namespace ppgnn {
namespace {

constexpr std::uint64_t kGB = 1000ULL * 1000 * 1000;
constexpr std::uint64_t kTB = 1000 * kGB;

DataFootprint Bytes(std::uint64_t total) {
  DataFootprint fp;
  fp.total_bytes = total;
  return fp;
}

MemoryProbe Probe(std::uint64_t peak) {
  MemoryProbe p;
  p.peak_bytes = peak;
  return p;
}

int Rank(TierKind t) {
  switch (t) {
    case TierKind::kResident: return 0;
    case TierKind::kStaged: return 1;
    case TierKind::kStorage: return 2;
  }
  return 3;
}

TEST(FootprintTest, FourHundredGigabytesExpand) {
  // 400 GB of float32 features: rows * F * 4 = 400e9.
  const DataFootprint fp = EstimateFootprint(1'000'000'000, 100, 3, 1, 4);
  EXPECT_EQ(fp.total_bytes, 1'600'000'000'000ULL);
  EXPECT_EQ(fp.total_bytes, 4 * 400 * kGB);
}

TEST(FootprintTest, Examples) {
  EXPECT_EQ(EstimateFootprint(1'200'000, 100, 4, 1, 4).total_bytes,
            2'400'000'000ULL);
  EXPECT_EQ(EstimateFootprint(1000, 16, 0, 1, 4).total_bytes, 1000u * 16 * 4);
  EXPECT_EQ(EstimateFootprint(1000, 16, 2, 3, 2).total_bytes,
            1000u * 16 * 2 * 3 * 3);
  EXPECT_EQ(EstimateFootprint(0, 16, 2, 1, 4).total_bytes, 0u);
}

TEST(PlanTest, ScenarioTable) {
  HardwareBudget fast;
  fast.fast_tier_bytes = 4 * kGB;
  fast.bulk_tier_bytes = 380 * kGB;
  auto p = Plan(fast, Bytes(kGB), Probe(kGB / 2));
  EXPECT_EQ(p.tier, TierKind::kResident);
  EXPECT_EQ(p.method, Method::kRR);
  EXPECT_FALSE(p.rationale.empty());

  HardwareBudget host;
  host.fast_tier_bytes = 48 * kGB;
  host.bulk_tier_bytes = 380 * kGB;
  p = Plan(host, Bytes(100 * kGB), Probe(kGB));
  EXPECT_EQ(p.tier, TierKind::kStaged);
  EXPECT_EQ(p.method, Method::kRR);
  p = Plan(host, Bytes(100 * kGB), Probe(kGB), Method::kCR);
  EXPECT_EQ(p.tier, TierKind::kStaged);
  EXPECT_EQ(p.method, Method::kCR);

  p = Plan(host, Bytes(16 * kTB / 10), Probe(kGB));
  EXPECT_EQ(p.tier, TierKind::kStorage);
  EXPECT_EQ(p.method, Method::kCR);
  p = Plan(host, Bytes(16 * kTB / 10), Probe(kGB), Method::kCR);
  EXPECT_EQ(p.method, Method::kCR);
  EXPECT_THROW(Plan(host, Bytes(16 * kTB / 10), Probe(kGB), Method::kRR),
               ConfigError);
}

TEST(PlanTest, HeadroomBoundary) {
  HardwareBudget b;
  b.fast_tier_bytes = 1100;
  b.bulk_tier_bytes = 0;
  EXPECT_EQ(Plan(b, Bytes(900), Probe(100)).tier, TierKind::kResident);
  EXPECT_EQ(Plan(b, Bytes(901), Probe(100)).tier, TierKind::kStorage);
  b.bulk_tier_bytes = 1100;
  EXPECT_EQ(Plan(b, Bytes(1000), Probe(1)).tier, TierKind::kStaged);
  EXPECT_EQ(Plan(b, Bytes(1001), Probe(1)).tier, TierKind::kStorage);
}

TEST(PlanTest, MonotoneInBudgets) {
  const std::vector<std::uint64_t> grid = {0, 10 * kGB, 50 * kGB, 200 * kGB,
                                           2 * kTB};
  for (std::uint64_t footprint : {kGB, 30 * kGB, 150 * kGB, kTB}) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        HardwareBudget b{grid[i], grid[j], {}};
        const int here = Rank(Plan(b, Bytes(footprint), Probe(kGB)).tier);
        if (i + 1 < grid.size()) {
          HardwareBudget up{grid[i + 1], grid[j], {}};
          EXPECT_LE(Rank(Plan(up, Bytes(footprint), Probe(kGB)).tier), here);
        }
        if (j + 1 < grid.size()) {
          HardwareBudget up{grid[i], grid[j + 1], {}};
          EXPECT_LE(Rank(Plan(up, Bytes(footprint), Probe(kGB)).tier), here);
        }
      }
    }
  }
}

TEST(PlanTest, StorageAlwaysCrAndPure) {
  for (std::uint64_t fast : {std::uint64_t{0}, kGB, 100 * kGB}) {
    for (std::uint64_t bulk : {std::uint64_t{0}, kGB, 100 * kGB}) {
      for (std::uint64_t fp : {kGB / 2, 10 * kGB, kTB}) {
        HardwareBudget b{fast, bulk, {}};
        const auto a = Plan(b, Bytes(fp), Probe(kGB / 10));
        const auto again = Plan(b, Bytes(fp), Probe(kGB / 10));
        EXPECT_EQ(a.tier, again.tier);
        EXPECT_EQ(a.method, again.method);
        EXPECT_EQ(a.rationale, again.rationale);
        if (a.tier == TierKind::kStorage) {
          EXPECT_EQ(a.method, Method::kCR);
        }
      }
    }
  }
}

class ProbeTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir();
    SynthSpec spec;
    spec.num_nodes = 500;
    spec.num_classes = 3;
    spec.feature_dim = 16;
    spec.seed = 2;
    GenSynth(spec, dir_->path());
    PreprocessOptions opt;
    opt.hops = 2;
    opt.chunk_rows = 16;
    Preprocess(dir_->path(), opt);
  }
  static void TearDownTestSuite() { delete dir_; }

  static TrainConfig Config(ModelKind kind) {
    TrainConfig c;
    c.model = kind;
    c.hops = 2;
    c.batch_size = 64;
    c.chunk_rows = 16;
    c.hidden = 32;
    c.heads = 4;
    return c;
  }

  static testing::TempDir* dir_;
};

testing::TempDir* ProbeTest::dir_ = nullptr;

TEST_F(ProbeTest, CoversDoubleBuffer) {
  const auto ds = PreprocessedDataset::Open(dir_->path());
  const MemoryProbe p = ProbePeakMemory(Config(ModelKind::kSign), ds);
  EXPECT_EQ(p.batch_bytes, 64u * 16 * 4 * 3);
  EXPECT_GE(p.peak_bytes, 2 * p.batch_bytes);
}

TEST_F(ProbeTest, AttentionCostsMore) {
  const auto ds = PreprocessedDataset::Open(dir_->path());
  const auto sgc = ProbePeakMemory(Config(ModelKind::kSgc), ds);
  const auto hoga = ProbePeakMemory(Config(ModelKind::kHoga), ds);
  EXPECT_LT(sgc.peak_bytes, hoga.peak_bytes);
}

TEST_F(ProbeTest, Reproducible) {
  const auto ds = PreprocessedDataset::Open(dir_->path());
  const auto a = ProbePeakMemory(Config(ModelKind::kHoga), ds);
  for (int i = 0; i < 3; ++i) {
    const auto b = ProbePeakMemory(Config(ModelKind::kHoga), ds);
    EXPECT_NEAR(static_cast<double>(b.peak_bytes),
                static_cast<double>(a.peak_bytes), 0.1 * a.peak_bytes);
  }
}

TEST_F(ProbeTest, MissingStorageFails) {
  testing::TempDir copy;
  for (const auto& e : std::filesystem::directory_iterator(dir_->path())) {
    std::filesystem::copy(e.path(), copy.path() / e.path().filename());
  }
  const auto ds = PreprocessedDataset::Open(copy.path());
  std::filesystem::remove(HopFilePath(copy.path(), 0, 1));
  EXPECT_THROW(ProbePeakMemory(Config(ModelKind::kSgc), ds), DataError);
}

TEST(DetectTest, BulkMemoryIsPositiveWhenAvailable) {
  const auto bytes = DetectBulkMemoryBytes();
  if (std::filesystem::exists("/proc/meminfo")) {
    ASSERT_TRUE(bytes.has_value());
    EXPECT_GT(*bytes, 0u);
  }
}

}  // namespace
}  // namespace ppgnn
