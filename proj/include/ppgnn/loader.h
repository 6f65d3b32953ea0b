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

// Batch assembly from a data tier and the loaders that drive it.
//
// Three placements are modeled:
//   Resident  hop matrices live in fast memory; a batch is one gather per hop.
//   Staged    hop matrices live in bulk memory. RR batches are gathered into
//             a host staging buffer and then copied ("transferred") into the
//             batch slot; CR batches copy whole chunks straight into the slot.
//   Storage   hop data is read chunk-wise from PPGF files, one read stream per
//             hop file. CR only.
//
// Batch slots are Matrix<float> and therefore visible to the memory meter;
// the Staged staging buffer is host memory and is not.

#ifndef PPGNN_LOADER_H_
#define PPGNN_LOADER_H_

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <memory>
#include <mutex>
#include <span>
#include <string_view>
#include <thread>
#include <vector>

#include "ppgnn/chunk_store.h"
#include "ppgnn/matrix.h"
#include "ppgnn/sampler.h"

namespace ppgnn {

enum class TierKind { kResident, kStaged, kStorage };

TierKind ParseTier(std::string_view name);
std::string_view TierName(TierKind tier);

struct Tier {
  TierKind kind = TierKind::kResident;
  // Benchmark-mode latencies, applied once per batch by the producer.
  std::uint32_t inject_assemble_us = 0;
  std::uint32_t inject_transfer_us = 0;
};

// What a tier reads from. Resident/Staged use `hops`, whose row r is stored
// row r; Storage uses `stores`. Labels are always memory resident.
struct HopData {
  std::span<const Matrix<float>> hops;
  std::span<const ChunkStore> stores;
  std::span<const std::uint32_t> labels;

  std::size_t num_hop_matrices() const {
    return hops.empty() ? stores.size() : hops.size();
  }
  std::size_t feature_dim() const;
};

struct Batch {
  std::vector<Matrix<float>> hops;  // R+1 matrices, b x F each
  std::vector<std::uint32_t> labels;
  std::vector<std::uint64_t> row_ids;
  std::size_t ordinal = 0;

  std::size_t rows() const { return row_ids.size(); }
};

struct TransferStats {
  std::uint64_t bytes_assembled = 0;
  std::uint64_t bytes_transferred = 0;
  std::uint64_t batches_produced = 0;
  double assemble_seconds = 0;
  double transfer_seconds = 0;

  TransferStats& operator+=(const TransferStats& other);
};

class BatchAssembler {
 public:
  BatchAssembler(Tier tier, HopData data);

  const Tier& tier() const { return tier_; }
  const HopData& data() const { return data_; }

  // A batch whose hop matrices have room for `max_rows` rows.
  Batch MakeSlot(std::size_t max_rows) const;

  // One gather pass per hop matrix. Resident and Staged tiers only.
  void AssembleRows(std::span<const std::uint64_t> row_ids, Batch& out,
                    TransferStats& stats) const;

  // Copies the chunks contiguously in the given order.
  void AssembleChunks(const EpochSchedule& schedule,
                      std::span<const std::uint64_t> chunk_ids, Batch& out,
                      TransferStats& stats) const;

  // Batch i of the schedule, dispatched on the schedule's method.
  void Assemble(const EpochSchedule& schedule, std::size_t i, Batch& out,
                TransferStats& stats) const;

  // Throws ConfigError when the tier cannot serve the schedule.
  void CheckSchedule(const EpochSchedule& schedule) const;

 private:
  void CopyChunksFromMemory(const EpochSchedule& schedule,
                            std::span<const std::uint64_t> chunk_ids,
                            Batch& out) const;
  void ReadChunksFromStorage(const EpochSchedule& schedule,
                             std::span<const std::uint64_t> chunk_ids,
                             Batch& out) const;

  Tier tier_;
  HopData data_;
  mutable std::vector<std::vector<float>> staging_;  // Staged tier, per hop
};

// Iterates the batches of one epoch. The returned pointer stays valid until
// the next call to Next(); nullptr marks the end of the epoch.
class BatchLoader {
 public:
  virtual ~BatchLoader() = default;
  virtual const Batch* Next() = 0;
  virtual TransferStats stats() const = 0;
};

// Assembles each batch on demand on the calling thread.
class SerialLoader : public BatchLoader {
 public:
  SerialLoader(EpochSchedule schedule, const BatchAssembler& assembler);

  const Batch* Next() override;
  TransferStats stats() const override { return stats_; }

 private:
  EpochSchedule schedule_;
  const BatchAssembler& assembler_;
  Batch slot_;
  std::size_t next_ = 0;
  TransferStats stats_;
};

// Double-buffered loader: a producer thread fills slot (i mod 2) with batch i
// while the consumer works on the other slot. A slot is refilled only after
// the consumer released it by calling Next() again. If assembling batch i
// fails, the i-th call to Next() rethrows and iteration ends.
class PrefetchLoader : public BatchLoader {
 public:
  PrefetchLoader(EpochSchedule schedule, const BatchAssembler& assembler);
  ~PrefetchLoader() override;

  const Batch* Next() override;
  TransferStats stats() const override;

 private:
  enum class SlotState { kFree, kReady, kInUse };

  void Produce(std::stop_token stop);

  EpochSchedule schedule_;
  const BatchAssembler& assembler_;
  Batch slots_[2];
  SlotState state_[2] = {SlotState::kFree, SlotState::kFree};

  mutable std::mutex mu_;
  std::condition_variable_any cv_;
  std::exception_ptr error_;
  std::size_t error_ordinal_ = 0;
  int held_ = -1;
  std::size_t next_ = 0;
  bool finished_ = false;
  TransferStats stats_;

  std::jthread producer_;  // last: joins before the members above go away
};

std::unique_ptr<BatchLoader> MakeLoader(bool prefetch, EpochSchedule schedule,
                                        const BatchAssembler& assembler);

}  // namespace ppgnn

#endif  // PPGNN_LOADER_H_
