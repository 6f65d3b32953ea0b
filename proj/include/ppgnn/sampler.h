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

// Per-epoch minibatch schedules.
//
// Training rows are the prefix [0, train_rows) of every stored hop matrix.
// Row reshuffling (RR) permutes individual rows; chunk reshuffling (CR)
// permutes runs of `chunk_rows` contiguous rows and keeps each run intact,
// so a batch is a handful of bulk copies.

#ifndef PPGNN_SAMPLER_H_
#define PPGNN_SAMPLER_H_

#include <cstdint>
#include <string_view>
#include <vector>

namespace ppgnn {

enum class Method { kRR, kCR };

Method ParseMethod(std::string_view name);
std::string_view MethodName(Method method);

struct EpochSchedule {
  Method method = Method::kRR;
  // RR: row ids per batch. CR: chunk ids per batch.
  std::vector<std::vector<std::uint64_t>> batches;
  std::uint64_t train_rows = 0;
  std::uint64_t batch_size = 1;
  std::uint32_t chunk_rows = 1;  // 1 for RR
  std::uint64_t epoch_seed = 0;

  std::size_t num_batches() const { return batches.size(); }

  // First row and row count of a CR chunk.
  std::uint64_t ChunkBegin(std::uint64_t chunk_id) const {
    return chunk_id * chunk_rows;
  }
  std::uint64_t ChunkRowCount(std::uint64_t chunk_id) const;

  // Row ids of batch i, in batch order (chunks expanded for CR).
  std::vector<std::uint64_t> BatchRows(std::size_t i) const;
  std::uint64_t BatchRowCount(std::size_t i) const;
  std::uint64_t MaxBatchRows() const;
};

// Uniform permutation of [0, train_rows) cut into consecutive batches.
EpochSchedule RrSchedule(std::uint64_t train_rows, std::uint64_t batch_size,
                         std::uint64_t seed);

// Uniform permutation of chunk ids; a batch takes consecutive permuted chunks
// until it holds at least batch_size rows. The ragged last chunk joins
// whichever batch it lands in. chunk_rows == 1 reproduces RrSchedule
// exactly for the same seed.
EpochSchedule CrSchedule(std::uint64_t train_rows, std::uint32_t chunk_rows,
                         std::uint64_t batch_size, std::uint64_t seed);

}  // namespace ppgnn

#endif  // PPGNN_SAMPLER_H_
