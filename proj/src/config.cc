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

#include "ppgnn/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "ppgnn/errors.h"

namespace ppgnn {
namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T ParseNumber(std::string_view v) {
  T out{};
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size()) {
    throw ConfigError("bad number '" + std::string(v) + "'");
  }
  return out;
}

bool ParseBool(std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("bad boolean '" + std::string(v) + "'");
}

using Setter = std::function<void(ConfigFile&, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& Setters() {
  static const std::vector<std::pair<std::string, Setter>> setters = {
      {"dataset", [](ConfigFile& c, std::string_view v) { c.dataset = v; }},
      {"model",
       [](ConfigFile& c, std::string_view v) {
         c.train.model = ParseModelKind(v);
       }},
      {"hops",
       [](ConfigFile& c, std::string_view v) {
         c.train.hops = ParseNumber<int>(v);
       }},
      {"batch_size",
       [](ConfigFile& c, std::string_view v) {
         c.train.batch_size = ParseNumber<std::uint64_t>(v);
       }},
      {"chunk_rows",
       [](ConfigFile& c, std::string_view v) {
         c.train.chunk_rows = ParseNumber<std::uint32_t>(v);
       }},
      {"method",
       [](ConfigFile& c, std::string_view v) {
         c.train.method = ParseMethod(v);
       }},
      {"tier",
       [](ConfigFile& c, std::string_view v) { c.train.tier = ParseTier(v); }},
      {"epochs",
       [](ConfigFile& c, std::string_view v) {
         c.train.epochs = ParseNumber<int>(v);
       }},
      {"lr",
       [](ConfigFile& c, std::string_view v) {
         c.train.lr = ParseNumber<double>(v);
       }},
      {"dropout",
       [](ConfigFile& c, std::string_view v) {
         c.train.dropout = ParseNumber<double>(v);
       }},
      {"seed",
       [](ConfigFile& c, std::string_view v) {
         c.train.seed = ParseNumber<std::uint64_t>(v);
       }},
      {"eval_every",
       [](ConfigFile& c, std::string_view v) {
         c.train.eval_every = ParseNumber<int>(v);
       }},
      {"hidden",
       [](ConfigFile& c, std::string_view v) {
         c.train.hidden = ParseNumber<std::size_t>(v);
       }},
      {"heads",
       [](ConfigFile& c, std::string_view v) {
         c.train.heads = ParseNumber<std::size_t>(v);
       }},
      {"mlp_layers",
       [](ConfigFile& c, std::string_view v) {
         c.train.mlp_layers = ParseNumber<int>(v);
       }},
      {"prefetch",
       [](ConfigFile& c, std::string_view v) {
         c.train.prefetch = ParseBool(v);
       }},
      {"log", [](ConfigFile& c, std::string_view v) { c.train.log_path = v; }},
      {"inject_assemble_us",
       [](ConfigFile& c, std::string_view v) {
         c.train.inject_assemble_us = ParseNumber<std::uint32_t>(v);
       }},
      {"inject_transfer_us",
       [](ConfigFile& c, std::string_view v) {
         c.train.inject_transfer_us = ParseNumber<std::uint32_t>(v);
       }},
      {"inject_compute_us",
       [](ConfigFile& c, std::string_view v) {
         c.train.inject_compute_us = ParseNumber<std::uint32_t>(v);
       }},
      {"fast_tier_bytes",
       [](ConfigFile& c, std::string_view v) {
         c.fast_tier_bytes = ParseNumber<std::uint64_t>(v);
       }},
      {"bulk_tier_bytes",
       [](ConfigFile& c, std::string_view v) {
         c.bulk_tier_bytes = ParseNumber<std::uint64_t>(v);
       }},
  };
  return setters;
}

}  // namespace

ConfigFile ParseConfig(std::string_view text, std::string_view source) {
  ConfigFile config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    const auto& setters = Setters();
    const auto it = std::find_if(setters.begin(), setters.end(),
                                 [&](const auto& s) { return s.first == key; });
    if (it == setters.end()) {
      throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(where + ": repeated key '" + std::string(key) + "'");
    }
    if (value.empty()) {
      throw ConfigError(where + ": empty value for '" + std::string(key) + "'");
    }
    try {
      it->second(config, value);
    } catch (const Error& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  return config;
}

ConfigFile LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return ParseConfig(text.str(), path.string());
}

std::string FormatConfig(const ConfigFile& c) {
  const TrainConfig& t = c.train;
  std::ostringstream out;
  out.precision(17);
  if (!c.dataset.empty()) out << "dataset = " << c.dataset.string() << "\n";
  out << "model = " << ModelKindName(t.model) << "\n"
      << "hops = " << t.hops << "\n"
      << "batch_size = " << t.batch_size << "\n"
      << "chunk_rows = " << t.chunk_rows << "\n"
      << "method = " << MethodName(t.method) << "\n"
      << "tier = " << TierName(t.tier) << "\n"
      << "epochs = " << t.epochs << "\n"
      << "lr = " << t.lr << "\n"
      << "dropout = " << t.dropout << "\n"
      << "seed = " << t.seed << "\n"
      << "eval_every = " << t.eval_every << "\n"
      << "hidden = " << t.hidden << "\n"
      << "heads = " << t.heads << "\n"
      << "mlp_layers = " << t.mlp_layers << "\n"
      << "prefetch = " << (t.prefetch ? "true" : "false") << "\n"
      << "inject_assemble_us = " << t.inject_assemble_us << "\n"
      << "inject_transfer_us = " << t.inject_transfer_us << "\n"
      << "inject_compute_us = " << t.inject_compute_us << "\n";
  if (!t.log_path.empty()) out << "log = " << t.log_path.string() << "\n";
  if (c.fast_tier_bytes) out << "fast_tier_bytes = " << *c.fast_tier_bytes << "\n";
  if (c.bulk_tier_bytes) out << "bulk_tier_bytes = " << *c.bulk_tier_bytes << "\n";
  return out.str();
}

std::string SetConfigValue(std::string_view text, std::string_view key,
                           std::string_view value) {
  std::istringstream in{std::string(text)};
  std::ostringstream out;
  std::string raw;
  bool replaced = false;
  while (std::getline(in, raw)) {
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto eq = line.find('=');
    if (eq != std::string_view::npos && Trim(line.substr(0, eq)) == key) {
      out << key << " = " << value << "\n";
      replaced = true;
    } else {
      out << raw << "\n";
    }
  }
  if (!replaced) out << key << " = " << value << "\n";
  return out.str();
}

}  // namespace ppgnn
