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

// Normalized-adjacency diffusion operators and the one-time hop feature
// pre-propagation {X, BX, ..., B^R X}.

#ifndef PPGNN_PROPAGATION_H_
#define PPGNN_PROPAGATION_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ppgnn/csr_graph.h"
#include "ppgnn/matrix.h"

namespace ppgnn {

enum class NormKind {
  kSymmetric,  // D^-1/2 A D^-1/2
  kRow,        // D^-1 A
};

NormKind ParseNormKind(std::string_view name);
std::string_view NormKindName(NormKind kind);

// Sparse operator B with float64 entries, CSR layout with sorted columns.
// With self loops the diagonal is always present (A~ = I + A).
class PropagationOperator {
 public:
  std::uint64_t num_nodes() const { return row_offsets_.size() - 1; }
  std::uint64_t num_entries() const { return values_.size(); }

  std::span<const std::uint64_t> row_offsets() const { return row_offsets_; }
  std::span<const NodeId> col_indices() const { return col_indices_; }
  std::span<const double> values() const { return values_; }

  NormKind norm_kind() const { return norm_kind_; }
  bool self_loops() const { return self_loops_; }
  std::uint16_t operator_id() const { return operator_id_; }

  // Entry (i, j), zero when absent.
  double value(std::uint64_t i, NodeId j) const;

  // n x n identity; handy for tests and R = 0 pipelines.
  static PropagationOperator Identity(std::uint64_t n);

 private:
  friend PropagationOperator BuildOperator(const CsrGraph&, NormKind, bool,
                                           std::uint16_t);

  std::vector<std::uint64_t> row_offsets_{0};
  std::vector<NodeId> col_indices_;
  std::vector<double> values_;
  NormKind norm_kind_ = NormKind::kSymmetric;
  bool self_loops_ = true;
  std::uint16_t operator_id_ = 0;
};

// symmetric: value(i, j) = a_ij / sqrt(d_i d_j); row: value(i, j) = a_ij / d_i,
// where d is DegreeVector(graph, self_loops) and a_ij counts the edge plus the
// optional self loop. Rows with zero degree stay empty.
PropagationOperator BuildOperator(const CsrGraph& graph, NormKind kind,
                                  bool self_loops,
                                  std::uint16_t operator_id = 0);

// B x with float64 per-row accumulation in sorted column order.
Matrix<float> Spmm(const PropagationOperator& op, const Matrix<float>& x);

struct HopFeatureSet {
  std::vector<Matrix<float>> hops;  // hops[r] = B^r X, r = 0..R
  std::uint16_t operator_id = 0;

  int num_hops() const { return static_cast<int>(hops.size()) - 1; }
  std::size_t num_rows() const { return hops.empty() ? 0 : hops[0].rows(); }
  std::size_t feature_dim() const { return hops.empty() ? 0 : hops[0].cols(); }
};

HopFeatureSet Propagate(const PropagationOperator& op, const Matrix<float>& x,
                        int num_hops);

}  // namespace ppgnn

#endif  // PPGNN_PROPAGATION_H_
