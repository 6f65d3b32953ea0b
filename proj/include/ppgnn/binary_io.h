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

// Little-endian helpers shared by the PPGC/PPGF/PPGM writers and readers.

#ifndef PPGNN_BINARY_IO_H_
#define PPGNN_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "ppgnn/errors.h"

namespace ppgnn::io {

static_assert(std::endian::native == std::endian::little,
              "binary formats are written in host order; little-endian only");

class BinaryWriter {
 public:
  explicit BinaryWriter(const std::filesystem::path& path)
      : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw DataError("cannot open for writing: " + path.string());
  }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  void Put(const T& value) {
    Bytes(&value, sizeof(T));
  }

  template <typename T>
  void PutArray(std::span<const T> values) {
    Bytes(values.data(), values.size_bytes());
  }

  void Bytes(const void* data, std::size_t n) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    if (!out_) throw DataError("write failed: " + path_.string());
  }

  void Zeros(std::size_t n) {
    static constexpr char kZeros[4096] = {};
    while (n > 0) {
      const std::size_t step = n < sizeof(kZeros) ? n : sizeof(kZeros);
      Bytes(kZeros, step);
      n -= step;
    }
  }

  void Close() {
    out_.close();
    if (!out_) throw DataError("close failed: " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

class BinaryReader {
 public:
  explicit BinaryReader(const std::filesystem::path& path)
      : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw DataError("cannot open for reading: " + path.string());
  }

  template <typename T>
    requires std::is_trivially_copyable_v<T>
  T Get() {
    T value;
    Bytes(&value, sizeof(T));
    return value;
  }

  template <typename T>
  std::vector<T> GetArray(std::size_t count) {
    std::vector<T> values(count);
    Bytes(values.data(), count * sizeof(T));
    return values;
  }

  void Bytes(void* data, std::size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw FormatError(FormatError::Kind::kSizeMismatch,
                        "unexpected end of file: " + path_.string());
    }
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
};

inline void CheckMagic(BinaryReader& in, const char (&magic)[5]) {
  char got[4];
  in.Bytes(got, 4);
  if (std::memcmp(got, magic, 4) != 0) {
    throw FormatError(FormatError::Kind::kBadMagic,
                      std::string("bad magic, expected ") + magic + ": " +
                          in.path().string());
  }
}

}  // namespace ppgnn::io

#endif  // PPGNN_BINARY_IO_H_
