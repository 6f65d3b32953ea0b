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

#include "ppgnn/dataset.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ppgnn/binary_io.h"
#include "ppgnn/errors.h"
#include "ppgnn/rng.h"

namespace ppgnn {
namespace {

namespace fs = std::filesystem;

std::uint64_t ParseU64(const std::map<std::string, std::string>& kv,
                       const std::string& key, const fs::path& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    throw DataError("missing key '" + key + "' in " + path.string());
  }
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DataError("bad value for '" + key + "' in " + path.string());
  }
}

void RequireFile(const fs::path& path) {
  if (!fs::exists(path)) throw DataError("missing file: " + path.string());
}

}  // namespace

void SynthSpec::Validate() const {
  auto prob = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!prob(p_intra) || !prob(q_inter)) {
    throw ConfigError("edge probabilities must lie in [0, 1]");
  }
  if (num_classes < 1) throw ConfigError("need at least one class");
  if (feature_dim < 1) throw ConfigError("feature_dim must be >= 1");
  if (num_nodes > kMaxNodeId + 1) throw ConfigError("too many nodes");
  if (signal < 0 || noise < 0) {
    throw ConfigError("signal and noise must be non-negative");
  }
}

std::uint64_t RawDataset::CountSplit(Split s) const {
  return static_cast<std::uint64_t>(std::count(
      splits.begin(), splits.end(), static_cast<std::uint8_t>(s)));
}

RawDataset GenerateSynthetic(const SynthSpec& spec) {
  spec.Validate();
  const std::uint64_t n = spec.num_nodes;
  const std::uint32_t f = spec.feature_dim;
  Rng rng(spec.seed);

  RawDataset data;
  data.num_classes = spec.num_classes;
  data.labels.resize(n);
  for (auto& y : data.labels) {
    y = static_cast<std::uint32_t>(rng.Below(spec.num_classes));
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = i + 1; j < n; ++j) {
      const double prob =
          data.labels[i] == data.labels[j] ? spec.p_intra : spec.q_inter;
      if (rng.Uniform() < prob) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
      }
    }
  }
  data.graph = CsrGraph::FromEdges(n, edges, /*undirected=*/true);

  Matrix<double> means(spec.num_classes, f);
  for (std::uint32_t c = 0; c < spec.num_classes; ++c) {
    double norm = 0;
    for (std::uint32_t j = 0; j < f; ++j) {
      means(c, j) = rng.Normal();
      norm += means(c, j) * means(c, j);
    }
    norm = std::sqrt(norm);
    for (std::uint32_t j = 0; j < f; ++j) means(c, j) /= norm;
  }
  data.features = Matrix<float>(n, f);
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < f; ++j) {
      data.features(i, j) = static_cast<float>(
          spec.signal * means(data.labels[i], j) + spec.noise * rng.Normal());
    }
  }

  std::vector<std::uint64_t> order(n);
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  rng.Shuffle(std::span<std::uint64_t>(order));
  const std::uint64_t num_train = n * 6 / 10;
  const std::uint64_t num_val = n * 2 / 10;
  data.splits.resize(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    const Split s = k < num_train             ? Split::kTrain
                    : k < num_train + num_val ? Split::kVal
                                              : Split::kTest;
    data.splits[order[k]] = static_cast<std::uint8_t>(s);
  }
  return data;
}

void WriteRawDataset(const RawDataset& data, const fs::path& dir) {
  const std::uint64_t n = data.graph.num_nodes();
  if (data.features.rows() != n || data.labels.size() != n ||
      data.splits.size() != n) {
    throw ShapeError("dataset arrays disagree on node count");
  }
  fs::create_directories(dir);
  WriteCsr(data.graph, dir / "graph.ppgc");
  {
    io::BinaryWriter out(dir / "features.bin");
    out.Put<std::uint64_t>(n);
    out.Put<std::uint64_t>(data.features.cols());
    out.PutArray(data.features.values());
    out.Close();
  }
  {
    io::BinaryWriter out(dir / "labels.bin");
    out.PutArray(std::span<const std::uint32_t>(data.labels));
    out.Close();
  }
  {
    io::BinaryWriter out(dir / "splits.bin");
    out.PutArray(std::span<const std::uint8_t>(data.splits));
    out.Close();
  }
  std::ofstream meta(dir / "meta", std::ios::trunc);
  meta << "n=" << n << "\nF=" << data.features.cols()
       << "\nC=" << data.num_classes
       << "\ntrain=" << data.CountSplit(Split::kTrain)
       << "\nval=" << data.CountSplit(Split::kVal)
       << "\ntest=" << data.CountSplit(Split::kTest) << "\n";
  if (!meta) throw DataError("cannot write " + (dir / "meta").string());
}

RawDataset LoadRawDataset(const fs::path& dir) {
  for (const char* name :
       {"graph.ppgc", "features.bin", "labels.bin", "splits.bin", "meta"}) {
    RequireFile(dir / name);
  }
  const auto meta = ReadKeyValueFile(dir / "meta");
  RawDataset data;
  data.graph = ReadCsr(dir / "graph.ppgc");
  const std::uint64_t n = ParseU64(meta, "n", dir / "meta");
  data.num_classes =
      static_cast<std::uint32_t>(ParseU64(meta, "C", dir / "meta"));
  if (data.graph.num_nodes() != n) {
    throw DataError("graph.ppgc and meta disagree on n");
  }
  {
    io::BinaryReader in(dir / "features.bin");
    const auto rows = in.Get<std::uint64_t>();
    const auto cols = in.Get<std::uint64_t>();
    if (rows != n) throw DataError("features.bin and meta disagree on n");
    data.features = Matrix<float>(rows, cols);
    in.Bytes(data.features.data(), data.features.size() * sizeof(float));
  }
  auto check_size = [&](const char* name, std::uint64_t bytes) {
    if (fs::file_size(dir / name) != bytes) {
      throw FormatError(FormatError::Kind::kSizeMismatch,
                        std::string(name) + " does not hold n entries");
    }
  };
  check_size("labels.bin", n * 4);
  check_size("splits.bin", n);
  data.labels = io::BinaryReader(dir / "labels.bin").GetArray<std::uint32_t>(n);
  data.splits = io::BinaryReader(dir / "splits.bin").GetArray<std::uint8_t>(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (data.splits[i] != static_cast<std::uint8_t>(Split::kNone) &&
        data.labels[i] >= data.num_classes) {
      throw DataError("label out of range at node " + std::to_string(i));
    }
  }
  return data;
}

void GenSynth(const SynthSpec& spec, const fs::path& dir) {
  WriteRawDataset(GenerateSynthetic(spec), dir);
}

std::vector<std::uint64_t> TrainPrefixOrder(
    std::span<const std::uint8_t> splits) {
  std::vector<std::uint64_t> order;
  for (const Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
    for (std::uint64_t i = 0; i < splits.size(); ++i) {
      if (splits[i] == static_cast<std::uint8_t>(s)) order.push_back(i);
    }
  }
  return order;
}

PreprocessReport Preprocess(const fs::path& dir,
                            const PreprocessOptions& options) {
  if (options.hops < 0) throw ConfigError("hops must be >= 0");
  if (options.chunk_rows < 1) throw ConfigError("chunk_rows must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const RawDataset raw = LoadRawDataset(dir);

  const PropagationOperator op = BuildOperator(
      raw.graph, options.norm, options.self_loops, options.operator_id);
  const HopFeatureSet set = Propagate(op, raw.features, options.hops);

  const std::vector<std::uint64_t> order = TrainPrefixOrder(raw.splits);
  const std::size_t f = raw.features.cols();
  PreprocessReport report;
  report.rows_written = order.size();
  Matrix<float> rows(order.size(), f);
  for (int r = 0; r <= options.hops; ++r) {
    const Matrix<float>& hop = set.hops[r];
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::copy_n(hop.row(order[i]).data(), f, rows.row(i).data());
    }
    WriteHopFile(rows, HopFilePath(dir, options.operator_id, r),
                 options.chunk_rows, static_cast<std::uint16_t>(r),
                 options.operator_id);
    report.bytes_written += rows.size() * sizeof(float);
  }
  {
    io::BinaryWriter out(dir / "permutation.bin");
    out.PutArray(std::span<const std::uint64_t>(order));
    out.Close();
  }
  const double raw_bytes = static_cast<double>(order.size() * f * sizeof(float));
  report.expansion_factor =
      raw_bytes > 0 ? static_cast<double>(report.bytes_written) / raw_bytes
                    : static_cast<double>(options.hops + 1);
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();

  std::ofstream meta(dir / "preprocess.meta", std::ios::trunc);
  meta << "hops=" << options.hops << "\nnorm=" << NormKindName(options.norm)
       << "\nself_loops=" << (options.self_loops ? 1 : 0)
       << "\nchunk_rows=" << options.chunk_rows
       << "\noperator_id=" << options.operator_id
       << "\ntrain=" << raw.CountSplit(Split::kTrain)
       << "\nval=" << raw.CountSplit(Split::kVal)
       << "\ntest=" << raw.CountSplit(Split::kTest) << "\nF=" << f
       << "\nC=" << raw.num_classes
       << "\nexpansion_factor=" << report.expansion_factor
       << "\nwall_seconds=" << report.wall_seconds << "\n";
  if (!meta) throw DataError("cannot write preprocess.meta");
  return report;
}

PreprocessedDataset PreprocessedDataset::Open(const fs::path& dir) {
  const fs::path meta_path = dir / "preprocess.meta";
  if (!fs::exists(meta_path)) {
    throw DataError("dataset is not preprocessed (no preprocess.meta in " +
                    dir.string() + ")");
  }
  const auto meta = ReadKeyValueFile(meta_path);
  PreprocessedDataset d;
  d.dir = dir;
  d.hops = static_cast<int>(ParseU64(meta, "hops", meta_path));
  d.chunk_rows = static_cast<std::uint32_t>(ParseU64(meta, "chunk_rows", meta_path));
  d.operator_id =
      static_cast<std::uint16_t>(ParseU64(meta, "operator_id", meta_path));
  d.train_rows = ParseU64(meta, "train", meta_path);
  d.val_rows = ParseU64(meta, "val", meta_path);
  d.test_rows = ParseU64(meta, "test", meta_path);
  d.feature_dim = static_cast<std::uint32_t>(ParseU64(meta, "F", meta_path));
  d.num_classes = static_cast<std::uint32_t>(ParseU64(meta, "C", meta_path));

  const fs::path perm_path = dir / "permutation.bin";
  RequireFile(perm_path);
  if (fs::file_size(perm_path) != d.num_rows() * 8) {
    throw FormatError(FormatError::Kind::kSizeMismatch,
                      "permutation.bin does not match split counts");
  }
  d.permutation = io::BinaryReader(perm_path).GetArray<std::uint64_t>(d.num_rows());

  RequireFile(dir / "labels.bin");
  const std::uint64_t n = fs::file_size(dir / "labels.bin") / 4;
  const auto all_labels =
      io::BinaryReader(dir / "labels.bin").GetArray<std::uint32_t>(n);
  d.labels.resize(d.num_rows());
  for (std::uint64_t i = 0; i < d.num_rows(); ++i) {
    if (d.permutation[i] >= n) throw DataError("permutation entry out of range");
    d.labels[i] = all_labels[d.permutation[i]];
  }
  return d;
}

std::vector<ChunkStore> PreprocessedDataset::OpenStores(int num_hops) const {
  if (num_hops < 0 || num_hops > hops) {
    throw ConfigError("requested " + std::to_string(num_hops) +
                      " hops but the dataset was preprocessed with " +
                      std::to_string(hops));
  }
  std::vector<ChunkStore> stores;
  for (int r = 0; r <= num_hops; ++r) {
    stores.push_back(OpenHopStore(
        HopFilePath(dir, operator_id, static_cast<std::uint16_t>(r))));
    const ChunkStore& s = stores.back();
    if (s.num_rows() != num_rows() || s.feature_dim() != feature_dim ||
        s.chunk_rows() != chunk_rows) {
      throw DataError("hop file disagrees with preprocess.meta: " +
                      s.path().string());
    }
  }
  return stores;
}

std::map<std::string, std::string> ReadKeyValueFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (line.empty() || eq == std::string::npos) continue;
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace ppgnn
