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

// Training config files.
//
//   # comment
//   dataset = /data/sbm
//   model = sign
//   hops = 3
//   method = CR
//
// One `key = value` per line. Unknown keys, repeated keys and malformed
// values are errors.

#ifndef PPGNN_CONFIG_H_
#define PPGNN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "ppgnn/trainer.h"

namespace ppgnn {

struct ConfigFile {
  std::filesystem::path dataset;
  TrainConfig train;
  std::optional<std::uint64_t> fast_tier_bytes;
  std::optional<std::uint64_t> bulk_tier_bytes;
};

// `source` names the input in error messages.
ConfigFile ParseConfig(std::string_view text, std::string_view source = "config");
ConfigFile LoadConfigFile(const std::filesystem::path& path);

// Every key, in canonical order.
std::string FormatConfig(const ConfigFile& config);

// Replaces the values of `key` lines in place, appending missing keys;
// comments and other lines are kept verbatim.
std::string SetConfigValue(std::string_view text, std::string_view key,
                           std::string_view value);

}  // namespace ppgnn

#endif  // PPGNN_CONFIG_H_
