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

// Placement planning: where hop features live during training and which
// shuffling method the loader uses.
//
// Tiers, fastest first:
//   Resident  all hop rows in fast memory (GPU analog)
//   Staged    hop rows in bulk memory, batches copied over (host analog)
//   Storage   chunked reads from hop files; CR only

#ifndef PPGNN_PLANNER_H_
#define PPGNN_PLANNER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ppgnn/loader.h"
#include "ppgnn/sampler.h"
#include "ppgnn/trainer.h"

namespace ppgnn {

inline constexpr double kPlanHeadroom = 1.1;

struct HardwareBudget {
  std::uint64_t fast_tier_bytes = 0;
  std::uint64_t bulk_tier_bytes = 0;
  std::filesystem::path storage_path;
};

struct DataFootprint {
  std::uint64_t train_rows = 0;
  std::uint64_t feature_dim = 0;
  int hops = 0;
  int operators = 1;  // K
  std::uint64_t dtype_bytes = 4;
  std::uint64_t total_bytes = 0;
};

// total = train_rows * F * dtype_bytes * K * (R + 1).
DataFootprint EstimateFootprint(std::uint64_t train_rows,
                                std::uint64_t feature_dim, int hops,
                                int operators, std::uint64_t dtype_bytes);

struct MemoryProbe {
  std::uint64_t peak_bytes = 0;
  std::uint64_t batch_bytes = 0;  // one batch of R+1 hop rows
};

struct PlacementPlan {
  TierKind tier = TierKind::kResident;
  Method method = Method::kRR;
  std::string rationale;
};

// Fastest tier whose budget holds the data with 10% headroom. Resident needs
// footprint + probe, Staged needs the footprint in bulk memory, anything
// larger goes to Storage with CR. An override picks the method on the
// in-memory tiers; overriding Storage to RR throws ConfigError.
PlacementPlan Plan(const HardwareBudget& budget, const DataFootprint& footprint,
                   const MemoryProbe& probe,
                   std::optional<Method> method_override = std::nullopt);

// Runs three Storage-tier CR training steps with the double-buffered loader
// and reports the peak of live matrix bytes above the pre-run level.
MemoryProbe ProbePeakMemory(const TrainConfig& config,
                            const PreprocessedDataset& dataset);

// MemAvailable from /proc/meminfo, if readable.
std::optional<std::uint64_t> DetectBulkMemoryBytes();

}  // namespace ppgnn

#endif  // PPGNN_PLANNER_H_
