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

#include "ppgnn/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "json.hpp"

#include "ppgnn/errors.h"

namespace ppgnn {
namespace {

using Clock = std::chrono::steady_clock;

double MsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

void CheckData(const TrainConfig& config, const TrainingData& data) {
  const std::size_t want = static_cast<std::size_t>(config.hops) + 1;
  if (data.num_hop_matrices() != want) {
    throw ConfigError("training data holds " +
                      std::to_string(data.num_hop_matrices()) +
                      " hop matrices, model needs " + std::to_string(want));
  }
  if (data.train_rows == 0) throw DataError("no training rows");
  if (data.num_classes == 0) throw DataError("no classes");
  const std::uint64_t total = data.train_rows + data.val_rows + data.test_rows;
  if (data.labels.size() != total) {
    throw ShapeError("label count does not match split sizes");
  }
  if (config.tier == TierKind::kStorage) {
    if (data.stores.size() != want) {
      throw ConfigError("storage tier needs one open store per hop");
    }
  } else if (data.first_row != 0 || data.hops.empty() ||
             data.hops[0].rows() != total) {
    throw ConfigError(std::string(TierName(config.tier)) +
                      " tier needs every row in memory");
  }
}

nlohmann::json ProfileJson(const EpochProfile& p) {
  return {{"assembly_ms", p.assembly_ms},
          {"transfer_ms", p.transfer_ms},
          {"forward_ms", p.forward_ms},
          {"backward_ms", p.backward_ms},
          {"optimizer_ms", p.optimizer_ms},
          {"compute_inject_ms", p.compute_inject_ms},
          {"eval_ms", p.eval_ms},
          {"total_ms", p.total_ms},
          {"producer_ms", p.producer_ms},
          {"bytes_assembled", p.bytes_assembled},
          {"bytes_transferred", p.bytes_transferred}};
}

}  // namespace

void TrainConfig::Validate() const {
  if (hops < 0) throw ConfigError("hops must be >= 0");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (chunk_rows < 1) throw ConfigError("chunk_rows must be >= 1");
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(lr > 0)) throw ConfigError("lr must be positive");
  if (!(dropout >= 0 && dropout < 1)) {
    throw ConfigError("dropout must lie in [0, 1)");
  }
  if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (method == Method::kCR && chunk_rows > batch_size) {
    throw ConfigError("CR requires chunk_rows <= batch_size");
  }
  if (tier == TierKind::kStorage && method != Method::kCR) {
    throw ConfigError("storage tier supports only CR");
  }
  ToModelConfig(1, 1).Validate();
}

ModelConfig TrainConfig::ToModelConfig(std::size_t in_dim,
                                       std::size_t num_classes) const {
  ModelConfig c;
  c.kind = model;
  c.hops = hops;
  c.in_dim = in_dim;
  c.num_classes = num_classes;
  c.hidden = hidden;
  c.heads = heads;
  c.mlp_layers = mlp_layers;
  c.dropout = dropout;
  return c;
}

std::size_t TrainingData::feature_dim() const {
  if (!hops.empty()) return hops[0].cols();
  if (!stores.empty()) return stores[0].feature_dim();
  return 0;
}

std::size_t TrainingData::num_hop_matrices() const {
  return std::max(hops.size(), stores.size());
}

TrainingData TrainingData::Load(const PreprocessedDataset& dataset, int hops,
                                TierKind tier) {
  TrainingData data;
  data.labels = dataset.labels;
  data.train_rows = dataset.train_rows;
  data.val_rows = dataset.val_rows;
  data.test_rows = dataset.test_rows;
  data.num_classes = dataset.num_classes;
  data.stores = dataset.OpenStores(hops);
  data.first_row = tier == TierKind::kStorage ? dataset.train_rows : 0;
  for (const ChunkStore& s : data.stores) {
    data.hops.push_back(s.ReadRows(data.first_row, s.num_rows()));
  }
  if (tier != TierKind::kStorage) data.stores.clear();
  return data;
}

double Accuracy(const Matrix<float>& logits,
                std::span<const std::uint32_t> labels) {
  if (logits.rows() != labels.size()) {
    throw ShapeError("logits and labels disagree on row count");
  }
  if (labels.empty()) throw DataError("accuracy of an empty set");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const auto row = logits.row(i);
    const auto best = std::max_element(row.begin(), row.end()) - row.begin();
    if (static_cast<std::uint32_t>(best) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(labels.size());
}

double Evaluate(const Model<float>& model, const TrainingData& data,
                std::uint64_t begin, std::uint64_t end,
                std::size_t block_rows) {
  if (begin >= end) throw DataError("empty evaluation split");
  if (block_rows < 1) throw ConfigError("block_rows must be >= 1");
  const std::size_t num_hops = static_cast<std::size_t>(model.config().hops) + 1;
  if (data.hops.size() < num_hops) {
    throw ConfigError("evaluation data lacks hop matrices");
  }
  const std::uint64_t held = data.hops[0].rows();
  if (begin < data.first_row || end > data.first_row + held ||
      end > data.labels.size()) {
    throw DataError("evaluation rows are not held in memory");
  }
  const std::size_t f = data.hops[0].cols();
  std::vector<Matrix<float>> block(num_hops);
  std::size_t correct = 0;
  for (std::uint64_t lo = begin; lo < end; lo += block_rows) {
    const std::uint64_t hi = std::min<std::uint64_t>(end, lo + block_rows);
    for (std::size_t r = 0; r < num_hops; ++r) {
      block[r].resize(hi - lo, f);
      std::copy_n(data.hops[r].row(lo - data.first_row).data(),
                  (hi - lo) * f, block[r].data());
    }
    const Matrix<float> logits = model.Logits(block);
    for (std::size_t i = 0; i < logits.rows(); ++i) {
      const auto row = logits.row(i);
      const auto best = std::max_element(row.begin(), row.end()) - row.begin();
      if (static_cast<std::uint32_t>(best) == data.labels[lo + i]) ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(end - begin);
}

std::size_t ConvergencePoint(std::span<const double> curve) {
  if (curve.empty()) throw DataError("empty validation curve");
  const double peak = *std::max_element(curve.begin(), curve.end());
  for (std::size_t e = 0; e < curve.size(); ++e) {
    if (curve[e] >= 0.99 * peak) return e;
  }
  return curve.size() - 1;  // unreachable for finite curves
}

double Throughput(std::uint64_t train_rows, int epochs, double seconds) {
  if (!(seconds > 0)) throw DataError("throughput needs positive elapsed time");
  return static_cast<double>(train_rows) * epochs / seconds;
}

double Throughput(const RunResult& result) {
  return Throughput(result.train_rows, result.epochs, result.train_seconds);
}

TrainOutput TrainRun(const TrainConfig& config, const TrainingData& data) {
  config.Validate();
  CheckData(config, data);

  std::ofstream log;
  if (!config.log_path.empty()) {
    log.open(config.log_path, std::ios::trunc);
    if (!log) throw DataError("cannot open log " + config.log_path.string());
  }

  const ModelConfig mc =
      config.ToModelConfig(data.feature_dim(), data.num_classes);
  TrainOutput out;
  out.model = CreateModel<float>(mc, InitSeed(config.seed));
  Model<float>& model = *out.model;
  AdamOptions adam_options;
  adam_options.lr = config.lr;
  AdamState<float> adam = AdamState<float>::For(model.params(), adam_options);

  HopData hop_data;
  if (config.tier == TierKind::kStorage) {
    hop_data.stores = data.stores;
  } else {
    hop_data.hops = data.hops;
  }
  hop_data.labels = data.labels;
  const Tier tier{config.tier, config.inject_assemble_us,
                  config.inject_transfer_us};
  const BatchAssembler assembler(tier, hop_data);

  RunResult& result = out.result;
  result.train_rows = data.train_rows;
  result.epochs = config.epochs;
  const std::uint64_t val_begin = data.train_rows;
  const std::uint64_t test_begin = val_begin + data.val_rows;
  const std::uint64_t test_end = test_begin + data.test_rows;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto epoch_start = Clock::now();
    EpochProfile profile;
    const std::uint64_t eseed = EpochSeed(config.seed, epoch);
    EpochSchedule schedule =
        config.method == Method::kRR
            ? RrSchedule(data.train_rows, config.batch_size, eseed)
            : CrSchedule(data.train_rows, config.chunk_rows,
                         config.batch_size, eseed);
    assembler.CheckSchedule(schedule);

    double loss_sum = 0;
    std::uint64_t rows_seen = 0;
    double wait_ms = 0;
    TransferStats stats;
    {
      auto loader = MakeLoader(config.prefetch, std::move(schedule), assembler);
      for (;;) {
        auto t = Clock::now();
        const Batch* batch = loader->Next();
        wait_ms += MsSince(t);
        if (batch == nullptr) break;

        t = Clock::now();
        ForwardResult<float> fwd = model.Forward(
            batch->hops, true, DropoutSeed(config.seed, epoch, batch->ordinal));
        LossResult<float> loss = CrossEntropy(fwd.logits, batch->labels);
        profile.forward_ms += MsSince(t);

        t = Clock::now();
        Parameters<float> grads = model.Backward(*fwd.tape, loss.dlogits);
        profile.backward_ms += MsSince(t);

        t = Clock::now();
        AdamStep(model.params(), grads, adam);
        profile.optimizer_ms += MsSince(t);

        if (config.inject_compute_us > 0) {
          t = Clock::now();
          std::this_thread::sleep_for(
              std::chrono::microseconds(config.inject_compute_us));
          profile.compute_inject_ms += MsSince(t);
        }
        loss_sum += loss.loss * static_cast<double>(batch->rows());
        rows_seen += batch->rows();
      }
      stats = loader->stats();
    }

    const double produce_ms =
        (stats.assemble_seconds + stats.transfer_seconds) * 1e3;
    const double assemble_share =
        produce_ms > 0 ? stats.assemble_seconds * 1e3 / produce_ms : 1.0;
    profile.assembly_ms = wait_ms * assemble_share;
    profile.transfer_ms = wait_ms - profile.assembly_ms;
    profile.producer_ms = produce_ms;
    profile.bytes_assembled = stats.bytes_assembled;
    profile.bytes_transferred = stats.bytes_transferred;
    const double epoch_loss = loss_sum / static_cast<double>(rows_seen);
    result.train_loss.push_back(epoch_loss);
    const double train_ms = MsSince(epoch_start);

    nlohmann::json record = {{"epoch", epoch}, {"loss", epoch_loss}};
    const bool evaluate =
        (epoch + 1) % config.eval_every == 0 || epoch + 1 == config.epochs;
    if (evaluate) {
      const auto t = Clock::now();
      const double val = data.val_rows > 0
                             ? Evaluate(model, data, val_begin, test_begin)
                             : 0.0;
      const double test = data.test_rows > 0
                              ? Evaluate(model, data, test_begin, test_end)
                              : 0.0;
      profile.eval_ms = MsSince(t);
      result.val_acc.push_back(val);
      result.test_acc.push_back(test);
      result.eval_epochs.push_back(epoch);
      if (result.best_epoch < 0 || val > result.best_val_acc) {
        result.best_val_acc = val;
        result.best_epoch = epoch;
        result.test_acc_at_best = test;
      }
      record["val_acc"] = val;
      record["test_acc"] = test;
    } else {
      record["val_acc"] = nullptr;
    }
    profile.total_ms = train_ms + profile.eval_ms;
    result.train_seconds += train_ms / 1e3;
    result.profiles.push_back(profile);
    if (log.is_open()) {
      record["profile"] = ProfileJson(profile);
      log << record.dump() << '\n';
    }
  }

  result.convergence_epoch =
      result.eval_epochs[ConvergencePoint(result.val_acc)];
  if (log.is_open()) {
    const nlohmann::json summary = {
        {"summary", true},
        {"test_acc", result.test_acc_at_best},
        {"best_val_acc", result.best_val_acc},
        {"best_epoch", result.best_epoch},
        {"convergence_epoch", result.convergence_epoch},
        {"train_seconds", result.train_seconds},
        {"throughput", Throughput(result)}};
    log << summary.dump() << '\n';
    if (!log) throw DataError("failed writing log");
  }
  return out;
}

}  // namespace ppgnn
