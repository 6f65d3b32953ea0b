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

#include "ppgnn/csr_graph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>

#include "ppgnn/binary_io.h"
#include "ppgnn/errors.h"

namespace ppgnn {
namespace {

constexpr std::uint32_t kCsrVersion = 1;

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Returns false when the line holds no further token.
bool NextToken(std::string_view& line, std::string_view& token) {
  std::size_t i = 0;
  while (i < line.size() && IsSpace(line[i])) ++i;
  if (i == line.size()) return false;
  std::size_t j = i;
  while (j < line.size() && !IsSpace(line[j])) ++j;
  token = line.substr(i, j - i);
  line.remove_prefix(j);
  return true;
}

std::uint64_t ParseNodeId(std::string_view token, std::uint64_t line_no,
                          const std::filesystem::path& path) {
  std::uint64_t value = 0;
  const auto [end, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw DataError(path.string() + ":" + std::to_string(line_no) +
                    ": node id overflow");
  }
  if (ec != std::errc() || end != token.data() + token.size()) {
    throw DataError(path.string() + ":" + std::to_string(line_no) +
                    ": parse error, expected non-negative integer, got '" +
                    std::string(token) + "'");
  }
  if (value > kMaxNodeId) {
    throw DataError(path.string() + ":" + std::to_string(line_no) +
                    ": node id overflow (" + std::string(token) + ")");
  }
  return value;
}

}  // namespace

CsrGraph::CsrGraph(std::vector<std::uint64_t> row_offsets,
                   std::vector<NodeId> col_indices)
    : row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)) {
  if (row_offsets_.empty() || row_offsets_.front() != 0 ||
      row_offsets_.back() != col_indices_.size()) {
    throw DataError("csr: row_offsets must start at 0 and end at m");
  }
  const std::uint64_t n = num_nodes();
  for (std::uint64_t i = 0; i < n; ++i) {
    if (row_offsets_[i] > row_offsets_[i + 1]) {
      throw DataError("csr: row_offsets must be non-decreasing");
    }
    for (std::uint64_t e = row_offsets_[i]; e < row_offsets_[i + 1]; ++e) {
      if (col_indices_[e] >= n) {
        throw DataError("csr: column index out of range");
      }
      if (e > row_offsets_[i] && col_indices_[e] <= col_indices_[e - 1]) {
        throw DataError("csr: columns must be sorted and unique within a row");
      }
    }
  }
}

CsrGraph CsrGraph::FromEdges(std::uint64_t num_nodes,
                             std::span<const std::pair<NodeId, NodeId>> edges,
                             bool undirected) {
  std::vector<std::pair<NodeId, NodeId>> all;
  all.reserve(edges.size() * (undirected ? 2 : 1));
  for (const auto& [src, dst] : edges) {
    if (src >= num_nodes || dst >= num_nodes) {
      throw DataError("edge endpoint out of range");
    }
    all.emplace_back(src, dst);
    if (undirected && src != dst) all.emplace_back(dst, src);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<std::uint64_t> offsets(num_nodes + 1, 0);
  std::vector<NodeId> cols;
  cols.reserve(all.size());
  for (const auto& [src, dst] : all) {
    ++offsets[src + 1];
    cols.push_back(dst);
  }
  for (std::uint64_t i = 0; i < num_nodes; ++i) offsets[i + 1] += offsets[i];
  return CsrGraph(std::move(offsets), std::move(cols));
}

CsrGraph IngestEdgeList(const std::filesystem::path& path, bool undirected) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list: " + path.string());

  std::vector<std::pair<NodeId, NodeId>> edges;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::string_view src_tok, dst_tok, extra;
    if (!NextToken(rest, src_tok)) continue;
    if (src_tok.front() == '#') continue;
    if (!NextToken(rest, dst_tok)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": parse error, expected 'src dst'");
    }
    if (NextToken(rest, extra)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": parse error, trailing token '" + std::string(extra) +
                      "'");
    }
    const std::uint64_t src = ParseNodeId(src_tok, line_no, path);
    const std::uint64_t dst = ParseNodeId(dst_tok, line_no, path);
    max_id = std::max({max_id, src, dst});
    any = true;
    edges.emplace_back(static_cast<NodeId>(src), static_cast<NodeId>(dst));
  }
  return CsrGraph::FromEdges(any ? max_id + 1 : 0, edges, undirected);
}

std::vector<double> DegreeVector(const CsrGraph& graph, bool with_self_loops) {
  std::vector<double> degree(graph.num_nodes());
  for (std::uint64_t i = 0; i < graph.num_nodes(); ++i) {
    degree[i] = static_cast<double>(graph.out_degree(i)) +
                (with_self_loops ? 1.0 : 0.0);
  }
  return degree;
}

void WriteCsr(const CsrGraph& graph, const std::filesystem::path& path) {
  io::BinaryWriter out(path);
  out.Bytes("PPGC", 4);
  out.Put(kCsrVersion);
  out.Put<std::uint64_t>(graph.num_nodes());
  out.Put<std::uint64_t>(graph.num_edges());
  out.PutArray(graph.row_offsets());
  out.PutArray(graph.col_indices());
  out.Close();
}

CsrGraph ReadCsr(const std::filesystem::path& path) {
  io::BinaryReader in(path);
  io::CheckMagic(in, "PPGC");
  if (in.Get<std::uint32_t>() != kCsrVersion) {
    throw FormatError(FormatError::Kind::kBadVersion,
                      "unsupported PPGC version: " + path.string());
  }
  const auto n = in.Get<std::uint64_t>();
  const auto m = in.Get<std::uint64_t>();
  const std::uint64_t expected = 4 + 4 + 8 + 8 + (n + 1) * 8 + m * 4;
  std::error_code ec;
  if (std::filesystem::file_size(path, ec) != expected || ec) {
    throw FormatError(FormatError::Kind::kSizeMismatch,
                      "PPGC size does not match header: " + path.string());
  }
  auto offsets = in.GetArray<std::uint64_t>(n + 1);
  auto cols = in.GetArray<NodeId>(m);
  return CsrGraph(std::move(offsets), std::move(cols));
}

}  // namespace ppgnn
