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

#include "ppgnn/loader_bench.h"

#include <chrono>
#include <thread>
#include <vector>

#include "ppgnn/errors.h"
#include "ppgnn/rng.h"

namespace ppgnn {
namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Recorded {
  std::vector<std::uint64_t> row_ids;
  std::vector<float> values;
};

LoaderBenchPhase RunPhase(bool prefetch, const EpochSchedule& schedule,
                          const BatchAssembler& assembler,
                          std::uint32_t compute_us,
                          std::vector<Recorded>& record) {
  LoaderBenchPhase phase;
  const auto start = Clock::now();
  {
    auto loader = MakeLoader(prefetch, schedule, assembler);
    for (;;) {
      auto t = Clock::now();
      const Batch* batch = loader->Next();
      phase.wait_ms += MsSince(t);
      if (batch == nullptr) break;
      t = Clock::now();
      Recorded r;
      r.row_ids = batch->row_ids;
      for (const auto& h : batch->hops) {
        r.values.insert(r.values.end(), h.values().begin(), h.values().end());
      }
      record.push_back(std::move(r));
      if (compute_us > 0) {
        std::this_thread::sleep_for(std::chrono::microseconds(compute_us));
      }
      phase.compute_ms += MsSince(t);
      ++phase.batches;
    }
    const TransferStats stats = loader->stats();
    phase.assemble_ms = stats.assemble_seconds * 1e3;
    phase.transfer_ms = stats.transfer_seconds * 1e3;
    phase.bytes_transferred = stats.bytes_transferred;
  }
  phase.wall_ms = MsSince(start);
  return phase;
}

}  // namespace

LoaderBenchResult RunLoaderBench(const LoaderBenchOptions& o) {
  if (o.tier == TierKind::kStorage) {
    throw ConfigError("bench-loader supports resident and staged tiers");
  }
  if (o.batches < 1 || o.batch_size < 1 || o.feature_dim < 1 || o.hops < 0) {
    throw ConfigError("bench-loader sizes must be positive");
  }
  const std::uint64_t rows = o.batches * o.batch_size;
  Rng rng(o.seed);
  std::vector<Matrix<float>> hops;
  for (int r = 0; r <= o.hops; ++r) {
    Matrix<float> m(rows, o.feature_dim);
    for (float& v : m.values()) v = static_cast<float>(rng.Uniform());
    hops.push_back(std::move(m));
  }
  std::vector<std::uint32_t> labels(rows, 0);
  HopData data;
  data.hops = hops;
  data.labels = labels;
  const BatchAssembler assembler(
      Tier{o.tier, o.inject_assemble_us, o.inject_transfer_us}, data);

  const EpochSchedule schedule =
      o.method == Method::kRR
          ? RrSchedule(rows, o.batch_size, o.seed)
          : CrSchedule(rows, o.chunk_rows, o.batch_size, o.seed);
  assembler.CheckSchedule(schedule);

  LoaderBenchResult result;
  std::vector<Recorded> serial_seq;
  std::vector<Recorded> prefetch_seq;
  result.serial = RunPhase(false, schedule, assembler, o.inject_compute_us,
                           serial_seq);
  result.prefetch = RunPhase(true, schedule, assembler, o.inject_compute_us,
                             prefetch_seq);
  result.sequences_equal = serial_seq.size() == prefetch_seq.size();
  for (std::size_t i = 0; result.sequences_equal && i < serial_seq.size(); ++i) {
    result.sequences_equal = serial_seq[i].row_ids == prefetch_seq[i].row_ids &&
                             serial_seq[i].values == prefetch_seq[i].values;
  }
  return result;
}

}  // namespace ppgnn
