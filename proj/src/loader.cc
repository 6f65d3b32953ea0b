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

#include "ppgnn/loader.h"

#include <chrono>
#include <cstring>
#include <future>
#include <string>

#include "ppgnn/errors.h"

namespace ppgnn {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void InjectDelay(std::uint32_t us) {
  if (us > 0) std::this_thread::sleep_for(std::chrono::microseconds(us));
}

}  // namespace

TierKind ParseTier(std::string_view name) {
  if (name == "resident" || name == "Resident") return TierKind::kResident;
  if (name == "staged" || name == "Staged") return TierKind::kStaged;
  if (name == "storage" || name == "Storage") return TierKind::kStorage;
  throw ConfigError("unknown tier '" + std::string(name) +
                    "' (expected resident|staged|storage)");
}

std::string_view TierName(TierKind tier) {
  switch (tier) {
    case TierKind::kResident:
      return "resident";
    case TierKind::kStaged:
      return "staged";
    case TierKind::kStorage:
      return "storage";
  }
  return "?";
}

std::size_t HopData::feature_dim() const {
  if (!hops.empty()) return hops.front().cols();
  if (!stores.empty()) return stores.front().feature_dim();
  return 0;
}

TransferStats& TransferStats::operator+=(const TransferStats& other) {
  bytes_assembled += other.bytes_assembled;
  bytes_transferred += other.bytes_transferred;
  batches_produced += other.batches_produced;
  assemble_seconds += other.assemble_seconds;
  transfer_seconds += other.transfer_seconds;
  return *this;
}

BatchAssembler::BatchAssembler(Tier tier, HopData data)
    : tier_(tier), data_(data) {
  if (tier_.kind == TierKind::kStorage) {
    if (data_.stores.empty()) {
      throw ConfigError("storage tier needs hop stores");
    }
    for (const ChunkStore& s : data_.stores) {
      if (s.feature_dim() != data_.stores[0].feature_dim() ||
          s.chunk_rows() != data_.stores[0].chunk_rows() ||
          s.num_rows() != data_.stores[0].num_rows()) {
        throw DataError("hop stores disagree on shape or chunk_rows: " +
                        s.path().string());
      }
    }
  } else if (data_.hops.empty()) {
    throw ConfigError("memory tiers need hop matrices");
  }
  if (tier_.kind == TierKind::kStaged) staging_.resize(data_.hops.size());
}

void BatchAssembler::CheckSchedule(const EpochSchedule& schedule) const {
  if (tier_.kind == TierKind::kStorage) {
    if (schedule.method != Method::kCR) {
      throw ConfigError("storage tier only supports chunk reshuffling (CR)");
    }
    if (schedule.chunk_rows != data_.stores[0].chunk_rows()) {
      throw ConfigError("schedule chunk_rows " +
                        std::to_string(schedule.chunk_rows) +
                        " differs from hop file chunk_rows " +
                        std::to_string(data_.stores[0].chunk_rows()));
    }
  }
}

Batch BatchAssembler::MakeSlot(std::size_t max_rows) const {
  Batch b;
  const std::size_t f = data_.feature_dim();
  b.hops.resize(data_.num_hop_matrices());
  for (auto& m : b.hops) {
    m.reserve(max_rows * f);
    m.resize(0, f);
  }
  b.labels.reserve(max_rows);
  b.row_ids.reserve(max_rows);
  return b;
}

void BatchAssembler::AssembleRows(std::span<const std::uint64_t> row_ids,
                                  Batch& out, TransferStats& stats) const {
  if (tier_.kind == TierKind::kStorage) {
    throw ConfigError("storage tier only supports chunk reshuffling (CR)");
  }
  const std::size_t f = data_.feature_dim();
  const std::size_t b = row_ids.size();
  const std::size_t num_rows = data_.hops.front().rows();
  for (const std::uint64_t id : row_ids) {
    if (id >= num_rows || id >= data_.labels.size()) {
      throw DataError("row id " + std::to_string(id) + " out of range (" +
                      std::to_string(num_rows) + " rows)");
    }
  }
  const std::uint64_t bytes = b * f * sizeof(float) * data_.hops.size();

  out.row_ids.assign(row_ids.begin(), row_ids.end());
  out.labels.resize(b);
  for (std::size_t i = 0; i < b; ++i) out.labels[i] = data_.labels[row_ids[i]];
  out.hops.resize(data_.hops.size());

  auto start = Clock::now();
  InjectDelay(tier_.inject_assemble_us);
  for (std::size_t h = 0; h < data_.hops.size(); ++h) {
    const Matrix<float>& src = data_.hops[h];
    float* dst;
    if (tier_.kind == TierKind::kStaged) {
      staging_[h].resize(b * f);
      dst = staging_[h].data();
    } else {
      out.hops[h].resize(b, f);
      dst = out.hops[h].data();
    }
    for (std::size_t i = 0; i < b; ++i) {
      std::memcpy(dst + i * f, src.row(row_ids[i]).data(), f * sizeof(float));
    }
  }
  stats.assemble_seconds += SecondsSince(start);
  stats.bytes_assembled += bytes;

  if (tier_.kind == TierKind::kStaged) {
    start = Clock::now();
    InjectDelay(tier_.inject_transfer_us);
    for (std::size_t h = 0; h < data_.hops.size(); ++h) {
      out.hops[h].resize(b, f);
      std::memcpy(out.hops[h].data(), staging_[h].data(), b * f * sizeof(float));
    }
    stats.transfer_seconds += SecondsSince(start);
    stats.bytes_transferred += bytes;
  }
  ++stats.batches_produced;
}

void BatchAssembler::CopyChunksFromMemory(
    const EpochSchedule& schedule, std::span<const std::uint64_t> chunk_ids,
    Batch& out) const {
  const std::size_t f = data_.feature_dim();
  for (std::size_t h = 0; h < data_.hops.size(); ++h) {
    float* dst = out.hops[h].data();
    for (const std::uint64_t chunk : chunk_ids) {
      const std::uint64_t begin = schedule.ChunkBegin(chunk);
      const std::uint64_t count = schedule.ChunkRowCount(chunk);
      std::memcpy(dst, data_.hops[h].row(begin).data(),
                  count * f * sizeof(float));
      dst += count * f;
    }
  }
}

void BatchAssembler::ReadChunksFromStorage(
    const EpochSchedule& schedule, std::span<const std::uint64_t> chunk_ids,
    Batch& out) const {
  const std::size_t f = data_.feature_dim();
  auto read_hop = [&](std::size_t h) {
    float* dst = out.hops[h].data();
    for (const std::uint64_t chunk : chunk_ids) {
      const std::uint64_t count = schedule.ChunkRowCount(chunk);
      try {
        data_.stores[h].ReadChunkHeadInto(chunk, count, {dst, count * f});
      } catch (const Error& e) {
        throw DataError("hop " + std::to_string(h) + ", chunk " +
                        std::to_string(chunk) + ": " + e.what());
      }
      dst += count * f;
    }
  };
  // One read stream per hop file.
  std::vector<std::future<void>> pending;
  for (std::size_t h = 1; h < data_.stores.size(); ++h) {
    pending.push_back(std::async(std::launch::async, read_hop, h));
  }
  std::exception_ptr first_error;
  try {
    read_hop(0);
  } catch (...) {
    first_error = std::current_exception();
  }
  for (auto& p : pending) {
    try {
      p.get();
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

void BatchAssembler::AssembleChunks(const EpochSchedule& schedule,
                                    std::span<const std::uint64_t> chunk_ids,
                                    Batch& out, TransferStats& stats) const {
  CheckSchedule(schedule);
  const std::size_t f = data_.feature_dim();
  const std::size_t num_rows = tier_.kind == TierKind::kStorage
                                   ? data_.stores.front().num_rows()
                                   : data_.hops.front().rows();
  std::size_t b = 0;
  out.row_ids.clear();
  for (const std::uint64_t chunk : chunk_ids) {
    const std::uint64_t begin = schedule.ChunkBegin(chunk);
    const std::uint64_t count = schedule.ChunkRowCount(chunk);
    if (begin >= schedule.train_rows || begin + count > num_rows) {
      throw DataError("chunk " + std::to_string(chunk) + " out of range");
    }
    for (std::uint64_t r = 0; r < count; ++r) out.row_ids.push_back(begin + r);
    b += count;
  }
  out.labels.resize(b);
  for (std::size_t i = 0; i < b; ++i) {
    out.labels[i] = data_.labels[out.row_ids[i]];
  }
  const std::size_t num_hops = data_.num_hop_matrices();
  out.hops.resize(num_hops);
  for (auto& m : out.hops) m.resize(b, f);
  const std::uint64_t bytes = b * f * sizeof(float) * num_hops;

  auto start = Clock::now();
  InjectDelay(tier_.inject_assemble_us);
  if (tier_.kind == TierKind::kResident) {
    CopyChunksFromMemory(schedule, chunk_ids, out);
    stats.assemble_seconds += SecondsSince(start);
  } else {
    stats.assemble_seconds += SecondsSince(start);
    start = Clock::now();
    InjectDelay(tier_.inject_transfer_us);
    if (tier_.kind == TierKind::kStaged) {
      CopyChunksFromMemory(schedule, chunk_ids, out);
    } else {
      ReadChunksFromStorage(schedule, chunk_ids, out);
    }
    stats.transfer_seconds += SecondsSince(start);
    stats.bytes_transferred += bytes;
  }
  stats.bytes_assembled += bytes;
  ++stats.batches_produced;
}

void BatchAssembler::Assemble(const EpochSchedule& schedule, std::size_t i,
                              Batch& out, TransferStats& stats) const {
  if (schedule.method == Method::kRR) {
    AssembleRows(schedule.batches.at(i), out, stats);
  } else {
    AssembleChunks(schedule, schedule.batches.at(i), out, stats);
  }
  out.ordinal = i;
}

SerialLoader::SerialLoader(EpochSchedule schedule,
                           const BatchAssembler& assembler)
    : schedule_(std::move(schedule)), assembler_(assembler) {
  assembler_.CheckSchedule(schedule_);
  slot_ = assembler_.MakeSlot(schedule_.MaxBatchRows());
}

const Batch* SerialLoader::Next() {
  if (next_ >= schedule_.num_batches()) return nullptr;
  assembler_.Assemble(schedule_, next_, slot_, stats_);
  ++next_;
  return &slot_;
}

PrefetchLoader::PrefetchLoader(EpochSchedule schedule,
                               const BatchAssembler& assembler)
    : schedule_(std::move(schedule)), assembler_(assembler) {
  assembler_.CheckSchedule(schedule_);
  const std::size_t max_rows = schedule_.MaxBatchRows();
  slots_[0] = assembler_.MakeSlot(max_rows);
  slots_[1] = assembler_.MakeSlot(max_rows);
  producer_ = std::jthread([this](std::stop_token st) { Produce(st); });
}

PrefetchLoader::~PrefetchLoader() {
  producer_.request_stop();
  cv_.notify_all();
  if (producer_.joinable()) producer_.join();
}

void PrefetchLoader::Produce(std::stop_token stop) {
  for (std::size_t i = 0; i < schedule_.num_batches(); ++i) {
    const int s = static_cast<int>(i % 2);
    {
      std::unique_lock lock(mu_);
      if (!cv_.wait(lock, stop, [&] { return state_[s] == SlotState::kFree; })) {
        return;
      }
    }
    TransferStats local;
    try {
      assembler_.Assemble(schedule_, i, slots_[s], local);
    } catch (...) {
      std::lock_guard lock(mu_);
      error_ = std::current_exception();
      error_ordinal_ = i;
      cv_.notify_all();
      return;
    }
    std::lock_guard lock(mu_);
    stats_ += local;
    state_[s] = SlotState::kReady;
    cv_.notify_all();
  }
}

const Batch* PrefetchLoader::Next() {
  std::unique_lock lock(mu_);
  if (held_ >= 0) {
    state_[held_] = SlotState::kFree;
    held_ = -1;
    cv_.notify_all();
  }
  if (finished_ || next_ >= schedule_.num_batches()) return nullptr;
  const int s = static_cast<int>(next_ % 2);
  cv_.wait(lock, [&] {
    return state_[s] == SlotState::kReady ||
           (error_ && error_ordinal_ == next_);
  });
  if (state_[s] != SlotState::kReady) {
    finished_ = true;
    std::rethrow_exception(error_);
  }
  state_[s] = SlotState::kInUse;
  held_ = s;
  ++next_;
  return &slots_[s];
}

TransferStats PrefetchLoader::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

std::unique_ptr<BatchLoader> MakeLoader(bool prefetch, EpochSchedule schedule,
                                        const BatchAssembler& assembler) {
  if (prefetch) {
    return std::make_unique<PrefetchLoader>(std::move(schedule), assembler);
  }
  return std::make_unique<SerialLoader>(std::move(schedule), assembler);
}

}  // namespace ppgnn
