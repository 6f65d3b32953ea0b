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

// Chunked hop-feature files (PPGF).
//
// One file holds a single hop matrix of one operator. Layout:
//
//   [0, 4096)            header, zero padded
//   data_offset + c * P  chunk c, rows [c * chunk_rows, ...), padded to P
//
// where P = round_up(chunk_rows * feature_dim * 4, 4096). Every chunk starts
// on a 4096-byte boundary so it can be fetched with one aligned positioned
// read. All integers are little-endian.

#ifndef PPGNN_CHUNK_STORE_H_
#define PPGNN_CHUNK_STORE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "ppgnn/matrix.h"

namespace ppgnn {

inline constexpr std::uint64_t kStoreAlignment = 4096;
inline constexpr std::uint32_t kStoreVersion = 1;

struct ChunkStoreHeader {
  std::uint32_t version = kStoreVersion;
  std::uint64_t num_rows = 0;
  std::uint32_t feature_dim = 0;
  std::uint8_t dtype_code = 0;  // 0 = float32
  std::uint32_t chunk_rows = 1;
  std::uint16_t hop_index = 0;
  std::uint16_t operator_id = 0;
  std::uint64_t data_offset = kStoreAlignment;

  std::uint64_t num_chunks() const {
    return (num_rows + chunk_rows - 1) / chunk_rows;
  }
  std::uint64_t padded_chunk_bytes() const;
  std::uint64_t chunk_offset(std::uint64_t chunk_id) const {
    return data_offset + chunk_id * padded_chunk_bytes();
  }
  std::uint64_t file_size() const {
    return data_offset + num_chunks() * padded_chunk_bytes();
  }
  std::uint64_t chunk_begin(std::uint64_t chunk_id) const {
    return chunk_id * chunk_rows;
  }
  std::uint64_t chunk_row_count(std::uint64_t chunk_id) const;
};

// Read-only handle on a PPGF file. Reads are positioned (pread), so one
// store can serve concurrent readers.
class ChunkStore {
 public:
  ChunkStore() = default;
  ~ChunkStore();
  ChunkStore(ChunkStore&& other) noexcept;
  ChunkStore& operator=(ChunkStore&& other) noexcept;
  ChunkStore(const ChunkStore&) = delete;
  ChunkStore& operator=(const ChunkStore&) = delete;

  const ChunkStoreHeader& header() const { return header_; }
  const std::filesystem::path& path() const { return path_; }
  std::uint64_t num_chunks() const { return header_.num_chunks(); }
  std::uint64_t num_rows() const { return header_.num_rows; }
  std::uint32_t feature_dim() const { return header_.feature_dim; }
  std::uint32_t chunk_rows() const { return header_.chunk_rows; }

  Matrix<float> ReadChunk(std::uint64_t chunk_id) const;

  // Reads chunk `chunk_id` into `out`, which must hold exactly
  // chunk_row_count * feature_dim floats.
  void ReadChunkInto(std::uint64_t chunk_id, std::span<float> out) const;

  // Leading `rows` rows of chunk `chunk_id`. The train split is a row prefix,
  // so its last chunk can end partway through a stored chunk.
  void ReadChunkHeadInto(std::uint64_t chunk_id, std::uint64_t rows,
                         std::span<float> out) const;

  // Rows [begin, end) in order, spanning chunks as needed.
  Matrix<float> ReadRows(std::uint64_t begin, std::uint64_t end) const;

 private:
  friend ChunkStore OpenHopStore(const std::filesystem::path&);

  ChunkStoreHeader header_;
  std::filesystem::path path_;
  int fd_ = -1;
};

ChunkStore WriteHopFile(const Matrix<float>& matrix,
                        const std::filesystem::path& path,
                        std::uint32_t chunk_rows, std::uint16_t hop_index,
                        std::uint16_t operator_id);

// Validates magic, version, field sanity and file size.
ChunkStore OpenHopStore(const std::filesystem::path& path);

// `<dir>/hop_<operator>_<hop>.ppgf`
std::filesystem::path HopFilePath(const std::filesystem::path& dir,
                                  std::uint16_t operator_id,
                                  std::uint16_t hop_index);

}  // namespace ppgnn

#endif  // PPGNN_CHUNK_STORE_H_
