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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ppgnn/errors.h"
#include "ppgnn/memory_meter.h"

namespace ppgnn {
namespace {

using Wide = unsigned __int128;

// need * 1.1 <= budget, in exact integers so the boundary is not at the mercy
// of rounding.
bool FitsWithHeadroom(Wide need, std::uint64_t budget) {
  return need * 11 <= static_cast<Wide>(budget) * 10;
}

std::string Bytes(Wide b) {
  std::ostringstream s;
  s << static_cast<unsigned long long>(b) << " B";
  return s.str();
}

}  // namespace

DataFootprint EstimateFootprint(std::uint64_t train_rows,
                                std::uint64_t feature_dim, int hops,
                                int operators, std::uint64_t dtype_bytes) {
  if (hops < 0 || operators < 0) {
    throw ConfigError("hops and operator count must be >= 0");
  }
  DataFootprint f;
  f.train_rows = train_rows;
  f.feature_dim = feature_dim;
  f.hops = hops;
  f.operators = operators;
  f.dtype_bytes = dtype_bytes;
  f.total_bytes = train_rows * feature_dim * dtype_bytes *
                  static_cast<std::uint64_t>(operators) *
                  static_cast<std::uint64_t>(hops + 1);
  return f;
}

PlacementPlan Plan(const HardwareBudget& budget, const DataFootprint& footprint,
                   const MemoryProbe& probe,
                   std::optional<Method> method_override) {
  const Wide data = footprint.total_bytes;
  const Wide resident = data + probe.peak_bytes;
  PlacementPlan plan;
  if (FitsWithHeadroom(resident, budget.fast_tier_bytes)) {
    plan.tier = TierKind::kResident;
    plan.method = method_override.value_or(Method::kRR);
    plan.rationale = "footprint + probe (" + Bytes(resident) +
                     ") fits fast tier with 10% headroom";
  } else if (FitsWithHeadroom(data, budget.bulk_tier_bytes)) {
    plan.tier = TierKind::kStaged;
    plan.method = method_override.value_or(Method::kRR);
    plan.rationale = "footprint (" + Bytes(data) +
                     ") exceeds fast tier, fits bulk tier with 10% headroom";
  } else {
    if (method_override == Method::kRR) {
      throw ConfigError("storage tier supports only CR; RR override rejected");
    }
    plan.tier = TierKind::kStorage;
    plan.method = Method::kCR;
    plan.rationale = "footprint (" + Bytes(data) +
                     ") exceeds bulk tier; chunked storage reads";
  }
  if (!method_override) plan.rationale += "; default method";
  else plan.rationale += "; method from override";
  return plan;
}

MemoryProbe ProbePeakMemory(const TrainConfig& config,
                            const PreprocessedDataset& dataset) {
  TrainConfig c = config;
  c.tier = TierKind::kStorage;
  c.method = Method::kCR;
  c.chunk_rows = dataset.chunk_rows;
  c.Validate();

  TrainingData data;
  data.stores = dataset.OpenStores(c.hops);
  data.labels = dataset.labels;
  data.train_rows = dataset.train_rows;
  data.num_classes = dataset.num_classes;
  if (data.train_rows == 0) throw DataError("no training rows to probe");

  const std::size_t f = dataset.feature_dim;
  MemoryProbe probe;
  probe.batch_bytes = std::min<std::uint64_t>(c.batch_size, data.train_rows) *
                      f * sizeof(float) * static_cast<std::uint64_t>(c.hops + 1);

  const std::size_t baseline = memory::LiveBytes();
  memory::ResetPeak();
  {
    auto model = CreateModel<float>(
        c.ToModelConfig(f, dataset.num_classes), InitSeed(c.seed));
    AdamOptions options;
    options.lr = c.lr;
    auto adam = AdamState<float>::For(model->params(), options);
    HopData hop_data;
    hop_data.stores = data.stores;
    hop_data.labels = data.labels;
    const BatchAssembler assembler(Tier{TierKind::kStorage, 0, 0}, hop_data);
    EpochSchedule schedule = CrSchedule(data.train_rows, c.chunk_rows,
                                        c.batch_size, EpochSeed(c.seed, 0));
    assembler.CheckSchedule(schedule);
    PrefetchLoader loader(std::move(schedule), assembler);
    for (int step = 0; step < 3; ++step) {
      const Batch* batch = loader.Next();
      if (batch == nullptr) break;
      auto fwd = model->Forward(batch->hops, true,
                                DropoutSeed(c.seed, 0, batch->ordinal));
      auto loss = CrossEntropy(fwd.logits, batch->labels);
      auto grads = model->Backward(*fwd.tape, loss.dlogits);
      AdamStep(model->params(), grads, adam);
    }
  }
  const std::size_t peak = memory::PeakBytes();
  probe.peak_bytes = peak > baseline ? peak - baseline : 0;
  return probe;
}

std::optional<std::uint64_t> DetectBulkMemoryBytes() {
  std::ifstream in("/proc/meminfo");
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string key;
    std::uint64_t kb = 0;
    if (fields >> key >> kb && key == "MemAvailable:") return kb * 1024;
  }
  return std::nullopt;
}

}  // namespace ppgnn
