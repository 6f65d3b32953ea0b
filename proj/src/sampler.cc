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

#include "ppgnn/sampler.h"

#include <algorithm>
#include <numeric>
#include <span>
#include <string>

#include "ppgnn/errors.h"
#include "ppgnn/rng.h"

namespace ppgnn {

Method ParseMethod(std::string_view name) {
  if (name == "RR" || name == "rr") return Method::kRR;
  if (name == "CR" || name == "cr") return Method::kCR;
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected RR|CR)");
}

std::string_view MethodName(Method method) {
  return method == Method::kRR ? "RR" : "CR";
}

std::uint64_t EpochSchedule::ChunkRowCount(std::uint64_t chunk_id) const {
  return std::min<std::uint64_t>(chunk_rows, train_rows - ChunkBegin(chunk_id));
}

std::vector<std::uint64_t> EpochSchedule::BatchRows(std::size_t i) const {
  const auto& entry = batches.at(i);
  if (method == Method::kRR) return entry;
  std::vector<std::uint64_t> rows;
  rows.reserve(BatchRowCount(i));
  for (const std::uint64_t chunk : entry) {
    const std::uint64_t begin = ChunkBegin(chunk);
    const std::uint64_t count = ChunkRowCount(chunk);
    for (std::uint64_t r = 0; r < count; ++r) rows.push_back(begin + r);
  }
  return rows;
}

std::uint64_t EpochSchedule::BatchRowCount(std::size_t i) const {
  const auto& entry = batches.at(i);
  if (method == Method::kRR) return entry.size();
  std::uint64_t n = 0;
  for (const std::uint64_t chunk : entry) n += ChunkRowCount(chunk);
  return n;
}

std::uint64_t EpochSchedule::MaxBatchRows() const {
  std::uint64_t best = 0;
  for (std::size_t i = 0; i < batches.size(); ++i) {
    best = std::max(best, BatchRowCount(i));
  }
  return best;
}

EpochSchedule RrSchedule(std::uint64_t train_rows, std::uint64_t batch_size,
                         std::uint64_t seed) {
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  std::vector<std::uint64_t> order(train_rows);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<std::uint64_t>(order));

  EpochSchedule s;
  s.method = Method::kRR;
  s.train_rows = train_rows;
  s.batch_size = batch_size;
  s.chunk_rows = 1;
  s.epoch_seed = seed;
  for (std::uint64_t begin = 0; begin < train_rows; begin += batch_size) {
    const std::uint64_t end = std::min(train_rows, begin + batch_size);
    s.batches.emplace_back(order.begin() + begin, order.begin() + end);
  }
  return s;
}

EpochSchedule CrSchedule(std::uint64_t train_rows, std::uint32_t chunk_rows,
                         std::uint64_t batch_size, std::uint64_t seed) {
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (chunk_rows < 1) throw ConfigError("chunk_rows must be >= 1");
  if (chunk_rows > batch_size) {
    throw ConfigError("chunk must not exceed batch (chunk_rows=" +
                      std::to_string(chunk_rows) +
                      ", batch_size=" + std::to_string(batch_size) + ")");
  }
  const std::uint64_t num_chunks = (train_rows + chunk_rows - 1) / chunk_rows;
  std::vector<std::uint64_t> order(num_chunks);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<std::uint64_t>(order));

  EpochSchedule s;
  s.method = Method::kCR;
  s.train_rows = train_rows;
  s.batch_size = batch_size;
  s.chunk_rows = chunk_rows;
  s.epoch_seed = seed;

  std::vector<std::uint64_t> current;
  std::uint64_t rows = 0;
  for (const std::uint64_t chunk : order) {
    current.push_back(chunk);
    rows += s.ChunkRowCount(chunk);
    if (rows >= batch_size) {
      s.batches.push_back(std::move(current));
      current.clear();
      rows = 0;
    }
  }
  if (!current.empty()) s.batches.push_back(std::move(current));
  return s;
}

}  // namespace ppgnn
