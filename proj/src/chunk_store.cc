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

#include "ppgnn/chunk_store.h"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <utility>

#include "ppgnn/binary_io.h"
#include "ppgnn/errors.h"

namespace ppgnn {
namespace {

constexpr std::uint64_t RoundUp(std::uint64_t v, std::uint64_t align) {
  return (v + align - 1) / align * align;
}

// Serialized header size; the rest of the first block is zero padding.
constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 4 + 1 + 4 + 2 + 2 + 8;

void PreadExact(int fd, void* buf, std::size_t n, std::uint64_t offset,
                const std::filesystem::path& path) {
  auto* p = static_cast<char*>(buf);
  while (n > 0) {
    const ssize_t got = ::pread(fd, p, n, static_cast<off_t>(offset));
    if (got < 0) {
      if (errno == EINTR) continue;
      throw DataError("read failed: " + path.string() + ": " +
                      std::strerror(errno));
    }
    if (got == 0) {
      throw FormatError(FormatError::Kind::kSizeMismatch,
                        "short read: " + path.string());
    }
    p += got;
    n -= static_cast<std::size_t>(got);
    offset += static_cast<std::uint64_t>(got);
  }
}

}  // namespace

std::uint64_t ChunkStoreHeader::padded_chunk_bytes() const {
  return RoundUp(std::uint64_t{chunk_rows} * feature_dim * sizeof(float),
                 kStoreAlignment);
}

std::uint64_t ChunkStoreHeader::chunk_row_count(std::uint64_t chunk_id) const {
  const std::uint64_t begin = chunk_begin(chunk_id);
  return std::min<std::uint64_t>(chunk_rows, num_rows - begin);
}

ChunkStore::~ChunkStore() {
  if (fd_ >= 0) ::close(fd_);
}

ChunkStore::ChunkStore(ChunkStore&& other) noexcept
    : header_(other.header_),
      path_(std::move(other.path_)),
      fd_(std::exchange(other.fd_, -1)) {}

ChunkStore& ChunkStore::operator=(ChunkStore&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    header_ = other.header_;
    path_ = std::move(other.path_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

void ChunkStore::ReadChunkInto(std::uint64_t chunk_id,
                               std::span<float> out) const {
  if (chunk_id >= num_chunks()) {
    throw DataError("chunk " + std::to_string(chunk_id) + " out of range (" +
                    std::to_string(num_chunks()) + " chunks) in " +
                    path_.string());
  }
  const std::uint64_t rows = header_.chunk_row_count(chunk_id);
  if (out.size() != rows * header_.feature_dim) {
    throw ShapeError("chunk buffer size mismatch for " + path_.string());
  }
  PreadExact(fd_, out.data(), out.size_bytes(), header_.chunk_offset(chunk_id),
             path_);
}

void ChunkStore::ReadChunkHeadInto(std::uint64_t chunk_id, std::uint64_t rows,
                                   std::span<float> out) const {
  if (chunk_id >= num_chunks()) {
    throw DataError("chunk " + std::to_string(chunk_id) + " out of range (" +
                    std::to_string(num_chunks()) + " chunks) in " +
                    path_.string());
  }
  if (rows > header_.chunk_row_count(chunk_id) ||
      out.size() != rows * header_.feature_dim) {
    throw ShapeError("chunk buffer size mismatch for " + path_.string());
  }
  PreadExact(fd_, out.data(), out.size_bytes(), header_.chunk_offset(chunk_id),
             path_);
}

Matrix<float> ChunkStore::ReadChunk(std::uint64_t chunk_id) const {
  if (chunk_id >= num_chunks()) {
    throw DataError("chunk " + std::to_string(chunk_id) + " out of range (" +
                    std::to_string(num_chunks()) + " chunks) in " +
                    path_.string());
  }
  Matrix<float> m(header_.chunk_row_count(chunk_id), header_.feature_dim);
  ReadChunkInto(chunk_id, m.values());
  return m;
}

Matrix<float> ChunkStore::ReadRows(std::uint64_t begin,
                                   std::uint64_t end) const {
  if (begin > end || end > num_rows()) {
    throw DataError("row range out of bounds in " + path_.string());
  }
  const std::size_t f = header_.feature_dim;
  Matrix<float> m(end - begin, f);
  std::uint64_t row = begin;
  while (row < end) {
    const std::uint64_t chunk = row / header_.chunk_rows;
    const std::uint64_t chunk_end =
        std::min(end, header_.chunk_begin(chunk) + header_.chunk_row_count(chunk));
    const std::uint64_t offset =
        header_.chunk_offset(chunk) +
        (row - header_.chunk_begin(chunk)) * f * sizeof(float);
    PreadExact(fd_, m.row(row - begin).data(),
               (chunk_end - row) * f * sizeof(float), offset, path_);
    row = chunk_end;
  }
  return m;
}

ChunkStore WriteHopFile(const Matrix<float>& matrix,
                        const std::filesystem::path& path,
                        std::uint32_t chunk_rows, std::uint16_t hop_index,
                        std::uint16_t operator_id) {
  if (chunk_rows < 1) throw ConfigError("chunk_rows must be >= 1");
  ChunkStoreHeader h;
  h.num_rows = matrix.rows();
  h.feature_dim = static_cast<std::uint32_t>(matrix.cols());
  h.chunk_rows = chunk_rows;
  h.hop_index = hop_index;
  h.operator_id = operator_id;
  h.data_offset = kStoreAlignment;

  io::BinaryWriter out(path);
  out.Bytes("PPGF", 4);
  out.Put(h.version);
  out.Put(h.num_rows);
  out.Put(h.feature_dim);
  out.Put(h.dtype_code);
  out.Put(h.chunk_rows);
  out.Put(h.hop_index);
  out.Put(h.operator_id);
  out.Put(h.data_offset);
  out.Zeros(h.data_offset - kHeaderBytes);

  const std::uint64_t padded = h.padded_chunk_bytes();
  for (std::uint64_t c = 0; c < h.num_chunks(); ++c) {
    const std::uint64_t rows = h.chunk_row_count(c);
    const std::uint64_t bytes = rows * h.feature_dim * sizeof(float);
    if (bytes > 0) out.Bytes(matrix.row(h.chunk_begin(c)).data(), bytes);
    out.Zeros(padded - bytes);
  }
  out.Close();
  return OpenHopStore(path);
}

ChunkStore OpenHopStore(const std::filesystem::path& path) {
  ChunkStoreHeader h;
  {
    io::BinaryReader in(path);
    io::CheckMagic(in, "PPGF");
    h.version = in.Get<std::uint32_t>();
    if (h.version != kStoreVersion) {
      throw FormatError(FormatError::Kind::kBadVersion,
                        "unsupported PPGF version " +
                            std::to_string(h.version) + ": " + path.string());
    }
    h.num_rows = in.Get<std::uint64_t>();
    h.feature_dim = in.Get<std::uint32_t>();
    h.dtype_code = in.Get<std::uint8_t>();
    h.chunk_rows = in.Get<std::uint32_t>();
    h.hop_index = in.Get<std::uint16_t>();
    h.operator_id = in.Get<std::uint16_t>();
    h.data_offset = in.Get<std::uint64_t>();
  }
  if (h.dtype_code != 0 || h.chunk_rows < 1 ||
      h.data_offset % kStoreAlignment != 0 || h.data_offset < kHeaderBytes) {
    throw FormatError(FormatError::Kind::kBadField,
                      "invalid PPGF header fields: " + path.string());
  }
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  if (ec || size != h.file_size()) {
    throw FormatError(FormatError::Kind::kSizeMismatch,
                      "PPGF file size " + std::to_string(size) +
                          " does not match header (expected " +
                          std::to_string(h.file_size()) + "): " +
                          path.string());
  }

  ChunkStore store;
  store.header_ = h;
  store.path_ = path;
  store.fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (store.fd_ < 0) {
    throw DataError("cannot open " + path.string() + ": " +
                    std::strerror(errno));
  }
  return store;
}

std::filesystem::path HopFilePath(const std::filesystem::path& dir,
                                  std::uint16_t operator_id,
                                  std::uint16_t hop_index) {
  return dir / ("hop_" + std::to_string(operator_id) + "_" +
                std::to_string(hop_index) + ".ppgf");
}

}  // namespace ppgnn
