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

// Mini-batch training loop, evaluation and per-epoch profiling.

#ifndef PPGNN_TRAINER_H_
#define PPGNN_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ppgnn/chunk_store.h"
#include "ppgnn/dataset.h"
#include "ppgnn/loader.h"
#include "ppgnn/matrix.h"
#include "ppgnn/models.h"
#include "ppgnn/rng.h"
#include "ppgnn/sampler.h"

namespace ppgnn {

struct TrainConfig {
  ModelKind model = ModelKind::kSign;
  int hops = 3;
  std::uint64_t batch_size = 256;
  std::uint32_t chunk_rows = 64;
  Method method = Method::kRR;
  TierKind tier = TierKind::kResident;
  int epochs = 50;
  double lr = 0.01;
  double dropout = 0.0;
  std::uint64_t seed = 0;
  int eval_every = 1;
  std::size_t hidden = 64;
  std::size_t heads = 4;
  int mlp_layers = 2;
  bool prefetch = true;
  std::uint32_t inject_assemble_us = 0;
  std::uint32_t inject_transfer_us = 0;
  std::uint32_t inject_compute_us = 0;  // slept after each optimizer step
  std::filesystem::path log_path;       // empty: no NDJSON log

  // Throws ConfigError. Called before any data is touched.
  void Validate() const;

  ModelConfig ToModelConfig(std::size_t in_dim, std::size_t num_classes) const;
};

// Seeds used by a run, exposed so external reference loops can replay one.
inline std::uint64_t InitSeed(std::uint64_t seed) { return MixSeed(seed); }
inline std::uint64_t EpochSeed(std::uint64_t seed, int epoch) {
  return seed ^ static_cast<std::uint64_t>(epoch);
}
inline std::uint64_t DropoutSeed(std::uint64_t seed, int epoch,
                                 std::size_t ordinal) {
  return MixSeed(MixSeed(seed ^ 0x5eedULL) +
                 (static_cast<std::uint64_t>(epoch) << 32) + ordinal);
}

struct EpochProfile {
  // Time the training step waited for batches, split by the producer's
  // assemble:transfer ratio.
  double assembly_ms = 0;
  double transfer_ms = 0;
  double forward_ms = 0;
  double backward_ms = 0;
  double optimizer_ms = 0;
  double compute_inject_ms = 0;
  double eval_ms = 0;
  double total_ms = 0;
  // Producer busy time; overlaps the step when prefetching.
  double producer_ms = 0;
  std::uint64_t bytes_assembled = 0;
  std::uint64_t bytes_transferred = 0;

  double ComponentSumMs() const {
    return assembly_ms + transfer_ms + forward_ms + backward_ms +
           optimizer_ms + compute_inject_ms + eval_ms;
  }
};

struct RunResult {
  std::vector<double> train_loss;    // per epoch
  std::vector<double> val_acc;       // per evaluated epoch
  std::vector<double> test_acc;      // per evaluated epoch
  std::vector<int> eval_epochs;      // epoch index of each evaluation
  double best_val_acc = 0;
  int best_epoch = -1;
  double test_acc_at_best = 0;
  int convergence_epoch = -1;
  std::vector<EpochProfile> profiles;
  std::uint64_t train_rows = 0;
  int epochs = 0;
  double train_seconds = 0;  // epoch time excluding evaluation
};

// Hop features and labels for one run, in preprocessed row order.
struct TrainingData {
  // Memory-resident hop rows [first_row, first_row + hops[r].rows()).
  // Resident and Staged tiers need first_row == 0 and every row; the
  // Storage tier keeps only the evaluation rows here.
  std::vector<Matrix<float>> hops;
  std::uint64_t first_row = 0;
  std::vector<ChunkStore> stores;      // Storage tier
  std::vector<std::uint32_t> labels;   // every stored row
  std::uint64_t train_rows = 0;
  std::uint64_t val_rows = 0;
  std::uint64_t test_rows = 0;
  std::uint32_t num_classes = 0;

  std::size_t feature_dim() const;
  std::size_t num_hop_matrices() const;

  static TrainingData Load(const PreprocessedDataset& dataset, int hops,
                           TierKind tier);
};

// Fraction of rows in [begin, end) whose argmax logit equals the label,
// evaluated in blocks of `block_rows`. Rows index the stored order; the
// data must hold them in memory.
double Evaluate(const Model<float>& model, const TrainingData& data,
                std::uint64_t begin, std::uint64_t end,
                std::size_t block_rows = 4096);

// Argmax accuracy of a logits matrix.
double Accuracy(const Matrix<float>& logits,
                std::span<const std::uint32_t> labels);

// Smallest e with curve[e] >= 0.99 * max(curve).
std::size_t ConvergencePoint(std::span<const double> curve);

// Labeled training rows processed per second.
double Throughput(std::uint64_t train_rows, int epochs, double seconds);
double Throughput(const RunResult& result);

struct TrainOutput {
  RunResult result;
  std::unique_ptr<Model<float>> model;
};

TrainOutput TrainRun(const TrainConfig& config, const TrainingData& data);

}  // namespace ppgnn

#endif  // PPGNN_TRAINER_H_
