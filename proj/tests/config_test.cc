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

#include "ppgnn/config.h"

#include <gtest/gtest.h>

#include "ppgnn/errors.h"
#include "test_util.h"

namespace ppgnn {
namespace {

std::string ErrorOf(std::string_view text) {
  try {
    ParseConfig(text, "cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ConfigTest, ParsesEveryKey) {
  const ConfigFile c = ParseConfig(R"(# run
dataset = /data/sbm
model = hoga
hops = 2
batch_size = 500   # rows
chunk_rows = 50
method = CR
tier = storage
epochs = 7
lr = 0.005
dropout = 0.1
seed = 9
eval_every = 2
hidden = 32
heads = 2
mlp_layers = 3
prefetch = false
log = /tmp/run.ndjson
inject_assemble_us = 10
inject_transfer_us = 20
inject_compute_us = 30
fast_tier_bytes = 1000
bulk_tier_bytes = 2000
)");
  EXPECT_EQ(c.dataset, "/data/sbm");
  EXPECT_EQ(c.train.model, ModelKind::kHoga);
  EXPECT_EQ(c.train.hops, 2);
  EXPECT_EQ(c.train.batch_size, 500u);
  EXPECT_EQ(c.train.chunk_rows, 50u);
  EXPECT_EQ(c.train.method, Method::kCR);
  EXPECT_EQ(c.train.tier, TierKind::kStorage);
  EXPECT_EQ(c.train.epochs, 7);
  EXPECT_DOUBLE_EQ(c.train.lr, 0.005);
  EXPECT_DOUBLE_EQ(c.train.dropout, 0.1);
  EXPECT_EQ(c.train.seed, 9u);
  EXPECT_EQ(c.train.eval_every, 2);
  EXPECT_EQ(c.train.hidden, 32u);
  EXPECT_EQ(c.train.heads, 2u);
  EXPECT_EQ(c.train.mlp_layers, 3);
  EXPECT_FALSE(c.train.prefetch);
  EXPECT_EQ(c.train.log_path, "/tmp/run.ndjson");
  EXPECT_EQ(c.train.inject_assemble_us, 10u);
  EXPECT_EQ(c.train.inject_transfer_us, 20u);
  EXPECT_EQ(c.train.inject_compute_us, 30u);
  EXPECT_EQ(c.fast_tier_bytes, 1000u);
  EXPECT_EQ(c.bulk_tier_bytes, 2000u);
}

TEST(ConfigTest, FailsClosed) {
  EXPECT_NE(ErrorOf("epoch = 3\n").find("cfg:1: unknown key 'epoch'"),
            std::string::npos);
  EXPECT_NE(ErrorOf("hops = 2\nhops = 3\n").find("cfg:2: repeated key"),
            std::string::npos);
  EXPECT_NE(ErrorOf("model =\n").find("empty value"), std::string::npos);
  EXPECT_NE(ErrorOf("just words\n").find("expected 'key = value'"),
            std::string::npos);
  EXPECT_NE(ErrorOf("hops = 2x\n"), "");
  EXPECT_NE(ErrorOf("lr = fast\n"), "");
  EXPECT_NE(ErrorOf("method = SGD\n"), "");
  EXPECT_NE(ErrorOf("tier = gpu\n"), "");
  EXPECT_NE(ErrorOf("prefetch = maybe\n"), "");
  EXPECT_NE(ErrorOf("batch_size = -4\n"), "");
  EXPECT_EQ(ErrorOf("\n  # only a comment\n\n"), "");
}

TEST(ConfigTest, FormatRoundTrip) {
  ConfigFile c;
  c.dataset = "/d";
  c.train.model = ModelKind::kSgc;
  c.train.lr = 0.1 + 0.2;
  c.train.dropout = 1.0 / 3.0;
  c.train.method = Method::kCR;
  c.train.prefetch = false;
  c.train.log_path = "/x.ndjson";
  c.bulk_tier_bytes = 77;
  const ConfigFile back = ParseConfig(FormatConfig(c));
  EXPECT_EQ(FormatConfig(back), FormatConfig(c));
  EXPECT_EQ(back.train.lr, c.train.lr);
  EXPECT_EQ(back.train.dropout, c.train.dropout);
  EXPECT_FALSE(back.fast_tier_bytes.has_value());
  EXPECT_EQ(back.bulk_tier_bytes, 77u);
}

TEST(ConfigTest, SetValueReplacesOrAppends) {
  const std::string text = "# header\ntier = resident  # fast\nhops = 2\n";
  std::string out = SetConfigValue(text, "tier", "storage");
  EXPECT_EQ(out, "# header\ntier = storage\nhops = 2\n");
  out = SetConfigValue(out, "method", "CR");
  EXPECT_EQ(out, "# header\ntier = storage\nhops = 2\nmethod = CR\n");
  const ConfigFile c = ParseConfig(out);
  EXPECT_EQ(c.train.tier, TierKind::kStorage);
  EXPECT_EQ(c.train.method, Method::kCR);
}

TEST(ConfigTest, LoadMissingFile) {
  EXPECT_THROW(LoadConfigFile("/nonexistent/ppgnn.cfg"), ConfigError);
  testing::TempDir dir;
  testing::WriteText(dir / "a.cfg", "hops = 1\n");
  EXPECT_EQ(LoadConfigFile(dir / "a.cfg").train.hops, 1);
}

}  // namespace
}  // namespace ppgnn
