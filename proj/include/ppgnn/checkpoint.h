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

// PPGM parameter checkpoints:
//
//   "PPGM" u32 version u32 model_kind
//   i32 hops u64 in_dim u64 num_classes u64 hidden u64 heads i32 mlp_layers
//   f64 dropout u32 num_tensors
//   num_tensors x (u64 rows, u64 cols)
//   float32 tensor data in table order
//
// Little-endian throughout.

#ifndef PPGNN_CHECKPOINT_H_
#define PPGNN_CHECKPOINT_H_

#include <filesystem>
#include <memory>

#include "ppgnn/models.h"

namespace ppgnn {

void SaveCheckpoint(const Model<float>& model,
                    const std::filesystem::path& path);

std::unique_ptr<Model<float>> LoadCheckpoint(const std::filesystem::path& path);

}  // namespace ppgnn

#endif  // PPGNN_CHECKPOINT_H_
