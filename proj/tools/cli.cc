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

#include "cli.h"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ppgnn/checkpoint.h"
#include "ppgnn/config.h"
#include "ppgnn/dataset.h"
#include "ppgnn/errors.h"
#include "ppgnn/loader_bench.h"
#include "ppgnn/planner.h"
#include "ppgnn/trainer.h"

namespace ppgnn::cli {
namespace {

using nlohmann::json;

struct GenSynthArgs {
  std::string out;
  SynthSpec spec;
};

struct PreprocessArgs {
  std::string dataset;
  int hops = 3;
  std::string norm = "symmetric";
  bool no_self_loops = false;
  std::uint32_t chunk_rows = 64;
  std::uint16_t operator_id = 0;
};

struct TrainArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string log;
  std::string save;
};

struct PlanArgs {
  std::string config;
  std::optional<std::uint64_t> fast_bytes;
  std::optional<std::uint64_t> bulk_bytes;
  std::string method_override;
  int operators = 1;
  bool write = false;
};

struct BenchArgs {
  LoaderBenchOptions options;
  std::string method = "RR";
  std::string tier = "resident";
};

int DoGenSynth(const GenSynthArgs& a, std::ostream& out) {
  GenSynth(a.spec, a.out);
  const RawDataset data = LoadRawDataset(a.out);
  out << json{{"dir", a.out},
              {"nodes", data.graph.num_nodes()},
              {"edges", data.graph.num_edges()},
              {"train", data.CountSplit(Split::kTrain)},
              {"val", data.CountSplit(Split::kVal)},
              {"test", data.CountSplit(Split::kTest)}}
             .dump()
      << "\n";
  return kExitOk;
}

int DoPreprocess(const PreprocessArgs& a, std::ostream& out) {
  PreprocessOptions o;
  o.hops = a.hops;
  o.norm = ParseNormKind(a.norm);
  o.self_loops = !a.no_self_loops;
  o.chunk_rows = a.chunk_rows;
  o.operator_id = a.operator_id;
  const PreprocessReport r = Preprocess(a.dataset, o);
  out << json{{"rows_written", r.rows_written},
              {"bytes_written", r.bytes_written},
              {"expansion_factor", r.expansion_factor},
              {"wall_seconds", r.wall_seconds}}
             .dump()
      << "\n";
  return kExitOk;
}

ConfigFile LoadValidated(const std::string& path) {
  ConfigFile config = LoadConfigFile(path);
  if (config.dataset.empty()) throw ConfigError("config lacks 'dataset'");
  config.train.Validate();
  return config;
}

int DoTrain(const TrainArgs& a, std::ostream& out) {
  ConfigFile config = LoadValidated(a.config);
  if (a.seed) config.train.seed = *a.seed;
  if (!a.log.empty()) config.train.log_path = a.log;

  const PreprocessedDataset dataset = PreprocessedDataset::Open(config.dataset);
  if (config.train.tier == TierKind::kStorage &&
      config.train.chunk_rows != dataset.chunk_rows) {
    throw ConfigError("storage tier needs chunk_rows = " +
                      std::to_string(dataset.chunk_rows) +
                      " (the preprocessed chunk size)");
  }
  const TrainingData data =
      TrainingData::Load(dataset, config.train.hops, config.train.tier);
  const TrainOutput run = TrainRun(config.train, data);
  const RunResult& r = run.result;
  if (!a.save.empty()) SaveCheckpoint(*run.model, a.save);
  out << json{{"final_loss", r.train_loss.back()},
              {"best_val_acc", r.best_val_acc},
              {"best_epoch", r.best_epoch},
              {"test_acc", r.test_acc_at_best},
              {"convergence_epoch", r.convergence_epoch},
              {"train_seconds", r.train_seconds},
              {"throughput", Throughput(r)}}
             .dump()
      << "\n";
  return kExitOk;
}

int DoPlan(const PlanArgs& a, std::ostream& out) {
  ConfigFile config = LoadValidated(a.config);
  std::optional<Method> override_method;
  if (!a.method_override.empty()) override_method = ParseMethod(a.method_override);

  HardwareBudget budget;
  if (a.fast_bytes) {
    budget.fast_tier_bytes = *a.fast_bytes;
  } else if (config.fast_tier_bytes) {
    budget.fast_tier_bytes = *config.fast_tier_bytes;
  } else {
    throw ConfigError("fast tier budget needed: --fast-bytes or fast_tier_bytes");
  }
  if (a.bulk_bytes) {
    budget.bulk_tier_bytes = *a.bulk_bytes;
  } else if (config.bulk_tier_bytes) {
    budget.bulk_tier_bytes = *config.bulk_tier_bytes;
  } else if (auto detected = DetectBulkMemoryBytes()) {
    budget.bulk_tier_bytes = *detected;
  } else {
    throw ConfigError(
        "bulk memory not detectable: --bulk-bytes or bulk_tier_bytes needed");
  }
  budget.storage_path = config.dataset;

  const PreprocessedDataset dataset = PreprocessedDataset::Open(config.dataset);
  const DataFootprint footprint = EstimateFootprint(
      dataset.train_rows, dataset.feature_dim, config.train.hops, a.operators,
      sizeof(float));
  const MemoryProbe probe = ProbePeakMemory(config.train, dataset);
  const PlacementPlan plan = Plan(budget, footprint, probe, override_method);

  if (a.write) {
    std::ifstream in(a.config);
    std::ostringstream text;
    text << in.rdbuf();
    std::string updated =
        SetConfigValue(text.str(), "tier", TierName(plan.tier));
    updated = SetConfigValue(updated, "method", MethodName(plan.method));
    if (plan.tier == TierKind::kStorage) {
      updated = SetConfigValue(updated, "chunk_rows",
                               std::to_string(dataset.chunk_rows));
    }
    ParseConfig(updated, a.config).train.Validate();
    std::ofstream file(a.config, std::ios::trunc);
    file << updated;
    if (!file) throw DataError("cannot rewrite " + a.config);
  }

  out << json{{"tier", TierName(plan.tier)},
              {"method", MethodName(plan.method)},
              {"rationale", plan.rationale},
              {"footprint_bytes", footprint.total_bytes},
              {"probe_peak_bytes", probe.peak_bytes},
              {"fast_tier_bytes", budget.fast_tier_bytes},
              {"bulk_tier_bytes", budget.bulk_tier_bytes}}
             .dump()
      << "\n";
  return kExitOk;
}

json PhaseJson(const LoaderBenchPhase& p) {
  return {{"wall_ms", p.wall_ms},         {"assemble_ms", p.assemble_ms},
          {"transfer_ms", p.transfer_ms}, {"wait_ms", p.wait_ms},
          {"compute_ms", p.compute_ms},   {"batches", p.batches},
          {"bytes_transferred", p.bytes_transferred}};
}

int DoBench(BenchArgs a, std::ostream& out) {
  a.options.method = ParseMethod(a.method);
  a.options.tier = ParseTier(a.tier);
  const LoaderBenchResult r = RunLoaderBench(a.options);
  out << json{{"serial", PhaseJson(r.serial)},
              {"prefetch", PhaseJson(r.prefetch)},
              {"speedup", r.speedup()},
              {"sequences_equal", r.sequences_equal}}
             .dump()
      << "\n";
  return r.sequences_equal ? kExitOk : kExitRuntime;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Pre-propagation GNN training toolkit", "ppgnn"};
  app.require_subcommand(1);

  GenSynthArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-synth", "write a synthetic SBM dataset");
  gen_cmd->add_option("--out", gen.out, "output directory")->required();
  gen_cmd->add_option("--nodes", gen.spec.num_nodes);
  gen_cmd->add_option("--classes", gen.spec.num_classes);
  gen_cmd->add_option("--features", gen.spec.feature_dim);
  gen_cmd->add_option("--p", gen.spec.p_intra, "intra-class edge probability");
  gen_cmd->add_option("--q", gen.spec.q_inter, "inter-class edge probability");
  gen_cmd->add_option("--signal", gen.spec.signal);
  gen_cmd->add_option("--noise", gen.spec.noise);
  gen_cmd->add_option("--seed", gen.spec.seed);

  PreprocessArgs pre;
  auto* pre_cmd = app.add_subcommand("preprocess", "propagate and write hop files");
  pre_cmd->add_option("--dataset", pre.dataset)->required();
  pre_cmd->add_option("--hops", pre.hops);
  pre_cmd->add_option("--norm", pre.norm, "symmetric or row");
  pre_cmd->add_flag("--no-self-loops", pre.no_self_loops);
  pre_cmd->add_option("--chunk-rows", pre.chunk_rows);
  pre_cmd->add_option("--operator-id", pre.operator_id);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "train from a config file");
  train_cmd->add_option("--config", train.config)->required();
  train_cmd->add_option("--seed", train.seed, "overrides the config seed");
  train_cmd->add_option("--log", train.log, "NDJSON metrics path");
  train_cmd->add_option("--save", train.save, "checkpoint path");

  PlanArgs plan;
  auto* plan_cmd = app.add_subcommand("plan", "choose tier and shuffling method");
  plan_cmd->add_option("--config", plan.config)->required();
  plan_cmd->add_option("--fast-bytes", plan.fast_bytes);
  plan_cmd->add_option("--bulk-bytes", plan.bulk_bytes);
  plan_cmd->add_option("--method-override", plan.method_override, "RR or CR");
  plan_cmd->add_option("--operators", plan.operators);
  plan_cmd->add_flag("--write", plan.write, "store tier and method in the config");

  BenchArgs bench;
  auto* bench_cmd =
      app.add_subcommand("bench-loader", "serial vs prefetch loading");
  bench_cmd->add_option("--batches", bench.options.batches);
  bench_cmd->add_option("--batch-size", bench.options.batch_size);
  bench_cmd->add_option("--features", bench.options.feature_dim);
  bench_cmd->add_option("--hops", bench.options.hops);
  bench_cmd->add_option("--method", bench.method);
  bench_cmd->add_option("--chunk-rows", bench.options.chunk_rows);
  bench_cmd->add_option("--tier", bench.tier);
  bench_cmd->add_option("--inject-assemble-us", bench.options.inject_assemble_us);
  bench_cmd->add_option("--inject-transfer-us", bench.options.inject_transfer_us);
  bench_cmd->add_option("--inject-compute-us", bench.options.inject_compute_us);
  bench_cmd->add_option("--seed", bench.options.seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return DoGenSynth(gen, out);
    if (*pre_cmd) return DoPreprocess(pre, out);
    if (*train_cmd) return DoTrain(train, out);
    if (*plan_cmd) return DoPlan(plan, out);
    if (*bench_cmd) return DoBench(bench, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace ppgnn::cli
