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

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ppgnn/checkpoint.h"
#include "ppgnn/config.h"
#include "test_util.h"

namespace ppgnn {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json Json() const { return json::parse(out); }
};

Outcome Cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

// Default-sized SBM dataset, generated and preprocessed once.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::TempDir();
    data_ = (dir_->path() / "sbm").string();
    const Outcome gen = Cli({"gen-synth", "--out", data_, "--seed", "1"});
    ASSERT_EQ(gen.code, 0) << gen.err;
    const Outcome pre = Cli({"preprocess", "--dataset", data_, "--hops", "3",
                             "--chunk-rows", "50"});
    ASSERT_EQ(pre.code, 0) << pre.err;
  }
  static void TearDownTestSuite() { delete dir_; }

  static std::string WriteConfig(const std::string& name,
                                 const std::string& body) {
    const fs::path path = dir_->path() / name;
    testing::WriteText(path, body);
    return path.string();
  }

  static testing::TempDir* dir_;
  static std::string data_;
};

testing::TempDir* CliTest::dir_ = nullptr;
std::string CliTest::data_;

TEST_F(CliTest, GenSynthReport) {
  const Outcome o = Cli({"gen-synth", "--out", (dir_->path() / "g").string(),
                         "--nodes", "100", "--classes", "2", "--features", "4",
                         "--seed", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = o.Json();
  EXPECT_EQ(j["nodes"], 100);
  EXPECT_EQ(j["train"], 60);
  EXPECT_EQ(j["val"], 20);
  EXPECT_EQ(j["test"], 20);
}

TEST_F(CliTest, PreprocessReport) {
  const std::string d = (dir_->path() / "p").string();
  ASSERT_EQ(Cli({"gen-synth", "--out", d, "--nodes", "80"}).code, 0);
  const Outcome o = Cli({"preprocess", "--dataset", d, "--hops", "2",
                         "--norm", "row", "--no-self-loops"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_DOUBLE_EQ(o.Json()["expansion_factor"].get<double>(), 3.0);
  const auto meta = ReadKeyValueFile(fs::path(d) / "preprocess.meta");
  EXPECT_EQ(meta.at("norm"), "row");
  EXPECT_EQ(meta.at("self_loops"), "0");
  EXPECT_EQ(Cli({"preprocess", "--dataset", d, "--norm", "cosine"}).code, 1);
}

TEST_F(CliTest, SignLearnsSyntheticGraph) {
  const std::string cfg = WriteConfig("sign.cfg", "dataset = " + data_ + R"(
model = sign
hops = 3
batch_size = 256
epochs = 50
seed = 1
)");
  const Outcome o = Cli({"train", "--config", cfg});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_GT(o.Json()["test_acc"].get<double>(), 0.85);
}

TEST_F(CliTest, NoiselessSeparableDataset) {
  const std::string d = (dir_->path() / "clean").string();
  ASSERT_EQ(Cli({"gen-synth", "--out", d, "--nodes", "400", "--noise", "0",
                 "--q", "0", "--seed", "2"}).code, 0);
  ASSERT_EQ(Cli({"preprocess", "--dataset", d, "--hops", "2"}).code, 0);
  for (const char* model : {"sgc", "sign", "hoga"}) {
    const std::string cfg = WriteConfig(
        std::string("clean_") + model + ".cfg",
        "dataset = " + d + "\nmodel = " + model +
            "\nhops = 2\nbatch_size = 64\nepochs = 30\nlr = 0.05\nhidden = 16\n");
    const Outcome o = Cli({"train", "--config", cfg});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.Json()["best_val_acc"].get<double>(), 1.0) << model;
  }
}

TEST_F(CliTest, SeedReproducible) {
  const std::string cfg = WriteConfig("seed.cfg", "dataset = " + data_ +
                                      "\nmodel = sgc\nepochs = 3\n");
  const Outcome a = Cli({"train", "--config", cfg, "--seed", "5"});
  const Outcome b = Cli({"train", "--config", cfg, "--seed", "5"});
  const Outcome c = Cli({"train", "--config", cfg, "--seed", "6"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.Json()["final_loss"], b.Json()["final_loss"]);
  EXPECT_NE(a.Json()["final_loss"], c.Json()["final_loss"]);
}

TEST_F(CliTest, SaveAndLog) {
  const fs::path model = dir_->path() / "m.ppgm";
  const fs::path log = dir_->path() / "m.ndjson";
  const std::string cfg = WriteConfig("save.cfg", "dataset = " + data_ +
                                      "\nmodel = sgc\nepochs = 2\n");
  const Outcome o = Cli({"train", "--config", cfg, "--save", model.string(),
                         "--log", log.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(LoadCheckpoint(model)->config().kind, ModelKind::kSgc);
  std::ifstream in(log);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 3);
}

TEST_F(CliTest, StorageWithRrRejectedBeforeIo) {
  // The dataset does not exist: a data error would mean I/O happened first.
  const std::string cfg = WriteConfig(
      "bad.cfg", "dataset = /nonexistent/ppgnn\ntier = storage\nmethod = RR\n");
  const Outcome o = Cli({"train", "--config", cfg});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("CR"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli({}).code, 1);
  EXPECT_EQ(Cli({"fly"}).code, 1);
  EXPECT_EQ(Cli({"--help"}).code, 0);
  EXPECT_EQ(Cli({"train"}).code, 1);
  EXPECT_EQ(Cli({"train", "--config", "/nonexistent.cfg"}).code, 1);
  const std::string typo = WriteConfig("typo.cfg", "dataset = " + data_ +
                                       "\nepoch = 3\n");
  const Outcome t = Cli({"train", "--config", typo});
  EXPECT_EQ(t.code, 1);
  EXPECT_NE(t.err.find("unknown key 'epoch'"), std::string::npos);
  const std::string missing = WriteConfig("missing.cfg",
                                          "dataset = /nonexistent/ppgnn\n");
  const Outcome m = Cli({"train", "--config", missing});
  EXPECT_EQ(m.code, 2);
  EXPECT_FALSE(m.err.empty());
  const std::string chunk = WriteConfig(
      "chunk.cfg", "dataset = " + data_ + "\ntier = storage\nmethod = CR\n"
                   "chunk_rows = 64\n");
  EXPECT_EQ(Cli({"train", "--config", chunk}).code, 1);
}

TEST_F(CliTest, PlanWithNoFastMemory) {
  const std::string cfg = WriteConfig("plan.cfg", "dataset = " + data_ + "\n");
  const Outcome o = Cli({"plan", "--config", cfg, "--fast-bytes", "0"});
  ASSERT_EQ(o.code, 0) << o.err;
  const std::string tier = o.Json()["tier"];
  EXPECT_TRUE(tier == "staged" || tier == "storage") << tier;
  EXPECT_EQ(Cli({"plan", "--config", cfg}).code, 1);  // no fast budget
}

TEST_F(CliTest, PlanWriteThenTrain) {
  const std::string cfg = WriteConfig(
      "roundtrip.cfg", "dataset = " + data_ + "\nmodel = sign\nepochs = 3\n");
  const Outcome plan = Cli({"plan", "--config", cfg, "--fast-bytes", "0",
                            "--bulk-bytes", "1000", "--write"});
  ASSERT_EQ(plan.code, 0) << plan.err;
  EXPECT_EQ(plan.Json()["tier"], "storage");
  EXPECT_EQ(plan.Json()["method"], "CR");
  const ConfigFile written = LoadConfigFile(cfg);
  EXPECT_EQ(written.train.tier, TierKind::kStorage);
  EXPECT_EQ(written.train.method, Method::kCR);
  EXPECT_EQ(written.train.epochs, 3);
  const Outcome train = Cli({"train", "--config", cfg});
  EXPECT_EQ(train.code, 0) << train.err;

  const Outcome rr = Cli({"plan", "--config", cfg, "--fast-bytes", "0",
                          "--bulk-bytes", "1000", "--method-override", "RR"});
  EXPECT_EQ(rr.code, 1);

  const std::string staged = WriteConfig(
      "staged.cfg", "dataset = " + data_ + "\nepochs = 2\n");
  const Outcome s = Cli({"plan", "--config", staged, "--fast-bytes", "0",
                         "--bulk-bytes", "1000000000000", "--method-override",
                         "CR", "--write"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.Json()["tier"], "staged");
  EXPECT_EQ(s.Json()["method"], "CR");
  EXPECT_EQ(Cli({"train", "--config", staged}).code, 0);
}

TEST(BenchLoaderCliTest, PrefetchSpeedup) {
  const Outcome o = Cli({"bench-loader", "--inject-assemble-us", "1000",
                         "--inject-compute-us", "1000"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = o.Json();
  EXPECT_TRUE(j["sequences_equal"].get<bool>());
  EXPECT_GE(j["speedup"].get<double>(), 1.3);
  EXPECT_LE(j["speedup"].get<double>(), 2.0);
  EXPECT_EQ(j["serial"]["batches"], 200);
  EXPECT_EQ(Cli({"bench-loader", "--tier", "storage"}).code, 1);
}

}  // namespace
}  // namespace ppgnn
