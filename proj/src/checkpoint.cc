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

#include "ppgnn/checkpoint.h"

#include "ppgnn/binary_io.h"
#include "ppgnn/errors.h"

namespace ppgnn {
namespace {

constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace

void SaveCheckpoint(const Model<float>& model,
                    const std::filesystem::path& path) {
  const ModelConfig& c = model.config();
  const Parameters<float>& p = model.params();
  io::BinaryWriter out(path);
  out.Bytes("PPGM", 4);
  out.Put(kCheckpointVersion);
  out.Put(static_cast<std::uint32_t>(c.kind));
  out.Put<std::int32_t>(c.hops);
  out.Put<std::uint64_t>(c.in_dim);
  out.Put<std::uint64_t>(c.num_classes);
  out.Put<std::uint64_t>(c.hidden);
  out.Put<std::uint64_t>(c.heads);
  out.Put<std::int32_t>(c.mlp_layers);
  out.Put<double>(c.dropout);
  out.Put(static_cast<std::uint32_t>(p.size()));
  for (const auto& t : p.tensors) {
    out.Put<std::uint64_t>(t.rows());
    out.Put<std::uint64_t>(t.cols());
  }
  for (const auto& t : p.tensors) out.PutArray(t.values());
  out.Close();
}

std::unique_ptr<Model<float>> LoadCheckpoint(
    const std::filesystem::path& path) {
  io::BinaryReader in(path);
  io::CheckMagic(in, "PPGM");
  if (in.Get<std::uint32_t>() != kCheckpointVersion) {
    throw FormatError(FormatError::Kind::kBadVersion,
                      "unsupported PPGM version: " + path.string());
  }
  ModelConfig c;
  const auto kind = in.Get<std::uint32_t>();
  if (kind > static_cast<std::uint32_t>(ModelKind::kHoga)) {
    throw FormatError(FormatError::Kind::kBadField,
                      "unknown model kind in " + path.string());
  }
  c.kind = static_cast<ModelKind>(kind);
  c.hops = in.Get<std::int32_t>();
  c.in_dim = in.Get<std::uint64_t>();
  c.num_classes = in.Get<std::uint64_t>();
  c.hidden = in.Get<std::uint64_t>();
  c.heads = in.Get<std::uint64_t>();
  c.mlp_layers = in.Get<std::int32_t>();
  c.dropout = in.Get<double>();

  Parameters<float> params = ParameterLayout<float>(c);
  const auto count = in.Get<std::uint32_t>();
  if (count != params.size()) {
    throw FormatError(FormatError::Kind::kBadField,
                      "tensor count does not match model layout: " +
                          path.string());
  }
  for (const auto& t : params.tensors) {
    const auto rows = in.Get<std::uint64_t>();
    const auto cols = in.Get<std::uint64_t>();
    if (rows != t.rows() || cols != t.cols()) {
      throw FormatError(FormatError::Kind::kBadField,
                        "tensor shape does not match model layout: " +
                            path.string());
    }
  }
  for (auto& t : params.tensors) in.Bytes(t.data(), t.size() * sizeof(float));
  return CreateModel<float>(c, std::move(params));
}

}  // namespace ppgnn
