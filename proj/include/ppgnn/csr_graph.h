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

#ifndef PPGNN_CSR_GRAPH_H_
#define PPGNN_CSR_GRAPH_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace ppgnn {

using NodeId = std::uint32_t;

// Largest node id accepted on ingestion; n = id + 1 must fit a NodeId.
inline constexpr std::uint64_t kMaxNodeId = 0xFFFFFFFEull;

// Unweighted directed graph in compressed-sparse-row form. Column indices are
// sorted and unique within each row. Immutable after construction.
class CsrGraph {
 public:
  CsrGraph() : row_offsets_{0} {}

  // Validates the CSR invariants; throws DataError on violation.
  CsrGraph(std::vector<std::uint64_t> row_offsets,
           std::vector<NodeId> col_indices);

  // Builds from an edge list over nodes [0, num_nodes). Duplicate edges are
  // dropped; `undirected` inserts both directions.
  static CsrGraph FromEdges(
      std::uint64_t num_nodes,
      std::span<const std::pair<NodeId, NodeId>> edges, bool undirected);

  std::uint64_t num_nodes() const { return row_offsets_.size() - 1; }
  std::uint64_t num_edges() const { return col_indices_.size(); }

  std::span<const std::uint64_t> row_offsets() const { return row_offsets_; }
  std::span<const NodeId> col_indices() const { return col_indices_; }

  std::span<const NodeId> neighbors(std::uint64_t node) const {
    return std::span<const NodeId>(col_indices_)
        .subspan(row_offsets_[node], row_offsets_[node + 1] - row_offsets_[node]);
  }

  std::uint64_t out_degree(std::uint64_t node) const {
    return row_offsets_[node + 1] - row_offsets_[node];
  }

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;

 private:
  std::vector<std::uint64_t> row_offsets_;
  std::vector<NodeId> col_indices_;
};

// Parses whitespace-separated "src dst" lines. Blank lines and lines starting
// with '#' are skipped. n is one past the largest id seen.
CsrGraph IngestEdgeList(const std::filesystem::path& path, bool undirected);

// Entry i is out-degree(i), plus one when self loops are counted.
std::vector<double> DegreeVector(const CsrGraph& graph, bool with_self_loops);

// PPGC binary format: "PPGC", u32 version, u64 n, u64 m, then n+1 u64 row
// offsets and m u32 column indices, little-endian.
void WriteCsr(const CsrGraph& graph, const std::filesystem::path& path);
CsrGraph ReadCsr(const std::filesystem::path& path);

}  // namespace ppgnn

#endif  // PPGNN_CSR_GRAPH_H_
