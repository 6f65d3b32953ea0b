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

#ifndef PPGNN_ERRORS_H_
#define PPGNN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ppgnn {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid user configuration (bad key, incompatible tier/method, ...).
// Raised before any I/O or computation starts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed, missing or inconsistent on-disk data, and I/O failures.
class DataError : public Error {
 public:
  using Error::Error;
};

// Operand shapes do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Binary file header validation failure. `kind()` tells which check failed.
class FormatError : public DataError {
 public:
  enum class Kind { kBadMagic, kBadVersion, kSizeMismatch, kBadField };

  FormatError(Kind kind, const std::string& what)
      : DataError(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace ppgnn

#endif  // PPGNN_ERRORS_H_
