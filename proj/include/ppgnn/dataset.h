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

// Dataset directory layout.
//
//   graph.ppgc       CSR graph (see csr_graph.h)
//   features.bin     u64 n, u64 F, then n x F float32 row-major
//   labels.bin       u32 class id per node
//   splits.bin       u8 per node: 0 train, 1 val, 2 test, 255 unused
//   meta             "key=value" lines: n, F, C, train, val, test
//
// After preprocessing:
//
//   hop_<k>_<r>.ppgf  one chunked store per hop; only split rows, ordered
//                     train, then val, then test (ascending node id inside
//                     each split), so training rows are the prefix
//   permutation.bin   u64 original node id of every stored row
//   preprocess.meta   "key=value" lines describing the run

#ifndef PPGNN_DATASET_H_
#define PPGNN_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ppgnn/chunk_store.h"
#include "ppgnn/csr_graph.h"
#include "ppgnn/matrix.h"
#include "ppgnn/propagation.h"

namespace ppgnn {

enum class Split : std::uint8_t { kTrain = 0, kVal = 1, kTest = 2, kNone = 255 };

// Stochastic block model with Gaussian class-mean features.
struct SynthSpec {
  std::uint64_t num_nodes = 2000;
  std::uint32_t num_classes = 4;
  std::uint32_t feature_dim = 32;
  double p_intra = 0.02;
  double q_inter = 0.002;
  double signal = 1.0;  // norm of each class mean vector
  double noise = 1.0;   // per-coordinate standard deviation
  std::uint64_t seed = 0;

  void Validate() const;
};

struct RawDataset {
  CsrGraph graph;
  Matrix<float> features;
  std::vector<std::uint32_t> labels;
  std::vector<std::uint8_t> splits;
  std::uint32_t num_classes = 0;

  std::uint64_t CountSplit(Split s) const;
};

// Undirected SBM; labels uniform over classes; 60/20/20 random split;
// features = signal * mu_label + noise * N(0, I) with unit-norm random class
// means mu_c. Deterministic in spec.seed.
RawDataset GenerateSynthetic(const SynthSpec& spec);

void WriteRawDataset(const RawDataset& data, const std::filesystem::path& dir);
RawDataset LoadRawDataset(const std::filesystem::path& dir);

// Writes GenerateSynthetic(spec) into dir.
void GenSynth(const SynthSpec& spec, const std::filesystem::path& dir);

struct PreprocessOptions {
  int hops = 3;
  NormKind norm = NormKind::kSymmetric;
  bool self_loops = true;
  std::uint32_t chunk_rows = 64;
  std::uint16_t operator_id = 0;
};

struct PreprocessReport {
  double wall_seconds = 0;
  std::uint64_t rows_written = 0;
  std::uint64_t bytes_written = 0;  // hop payload bytes, padding excluded
  double expansion_factor = 0;      // hop payload / raw split-row features
};

// Propagates over the whole graph, then writes the split rows of each hop.
PreprocessReport Preprocess(const std::filesystem::path& dir,
                            const PreprocessOptions& options);

// Stored-row order produced by Preprocess: train, val, test.
std::vector<std::uint64_t> TrainPrefixOrder(std::span<const std::uint8_t> splits);

// Handle on a preprocessed dataset directory.
struct PreprocessedDataset {
  std::filesystem::path dir;
  int hops = 0;
  std::uint32_t chunk_rows = 0;
  std::uint16_t operator_id = 0;
  std::uint64_t train_rows = 0;
  std::uint64_t val_rows = 0;
  std::uint64_t test_rows = 0;
  std::uint32_t num_classes = 0;
  std::uint32_t feature_dim = 0;
  std::vector<std::uint64_t> permutation;  // stored row -> node id
  std::vector<std::uint32_t> labels;       // per stored row

  std::uint64_t num_rows() const { return train_rows + val_rows + test_rows; }

  static PreprocessedDataset Open(const std::filesystem::path& dir);

  // Stores for hops 0..num_hops.
  std::vector<ChunkStore> OpenStores(int num_hops) const;
};

// "key=value" text files.
std::map<std::string, std::string> ReadKeyValueFile(
    const std::filesystem::path& path);

}  // namespace ppgnn

#endif  // PPGNN_DATASET_H_
