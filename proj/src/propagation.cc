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

#include "ppgnn/propagation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppgnn/errors.h"

namespace ppgnn {

NormKind ParseNormKind(std::string_view name) {
  if (name == "symmetric" || name == "sym") return NormKind::kSymmetric;
  if (name == "row") return NormKind::kRow;
  throw ConfigError("unknown normalization '" + std::string(name) +
                    "' (expected symmetric|row)");
}

std::string_view NormKindName(NormKind kind) {
  return kind == NormKind::kSymmetric ? "symmetric" : "row";
}

double PropagationOperator::value(std::uint64_t i, NodeId j) const {
  const auto begin = col_indices_.begin() + row_offsets_[i];
  const auto end = col_indices_.begin() + row_offsets_[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return 0.0;
  return values_[it - col_indices_.begin()];
}

PropagationOperator PropagationOperator::Identity(std::uint64_t n) {
  PropagationOperator op;
  op.row_offsets_.resize(n + 1);
  op.col_indices_.resize(n);
  op.values_.assign(n, 1.0);
  for (std::uint64_t i = 0; i <= n; ++i) op.row_offsets_[i] = i;
  for (std::uint64_t i = 0; i < n; ++i) op.col_indices_[i] = static_cast<NodeId>(i);
  return op;
}

PropagationOperator BuildOperator(const CsrGraph& graph, NormKind kind,
                                  bool self_loops, std::uint16_t operator_id) {
  const std::uint64_t n = graph.num_nodes();
  const std::vector<double> degree = DegreeVector(graph, self_loops);
  std::vector<double> inv_sqrt(n, 0.0);
  for (std::uint64_t i = 0; i < n; ++i) {
    if (degree[i] > 0) inv_sqrt[i] = 1.0 / std::sqrt(degree[i]);
  }

  PropagationOperator op;
  op.norm_kind_ = kind;
  op.self_loops_ = self_loops;
  op.operator_id_ = operator_id;
  op.row_offsets_.assign(n + 1, 0);
  op.col_indices_.reserve(graph.num_edges() + (self_loops ? n : 0));
  op.values_.reserve(op.col_indices_.capacity());

  auto emit = [&](std::uint64_t i, NodeId j, double multiplicity) {
    const double v = kind == NormKind::kSymmetric
                         ? multiplicity * inv_sqrt[i] * inv_sqrt[j]
                         : multiplicity / degree[i];
    op.col_indices_.push_back(j);
    op.values_.push_back(v);
  };

  for (std::uint64_t i = 0; i < n; ++i) {
    const auto nbrs = graph.neighbors(i);
    bool diagonal_done = !self_loops;
    for (const NodeId j : nbrs) {
      if (!diagonal_done && j >= i) {
        if (j == i) {
          emit(i, j, 2.0);  // explicit self edge plus the added loop
          diagonal_done = true;
          continue;
        }
        emit(i, static_cast<NodeId>(i), 1.0);
        diagonal_done = true;
      }
      emit(i, j, 1.0);
    }
    if (!diagonal_done) emit(i, static_cast<NodeId>(i), 1.0);
    op.row_offsets_[i + 1] = op.col_indices_.size();
  }
  return op;
}

Matrix<float> Spmm(const PropagationOperator& op, const Matrix<float>& x) {
  if (x.rows() != op.num_nodes()) {
    throw ShapeError("spmm: operator has " + std::to_string(op.num_nodes()) +
                     " nodes but feature matrix has " +
                     std::to_string(x.rows()) + " rows");
  }
  const std::size_t f = x.cols();
  Matrix<float> out(x.rows(), f);
  std::vector<double> acc(f);
  const auto offsets = op.row_offsets();
  const auto cols = op.col_indices();
  const auto vals = op.values();
  for (std::uint64_t i = 0; i < op.num_nodes(); ++i) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::uint64_t e = offsets[i]; e < offsets[i + 1]; ++e) {
      const double v = vals[e];
      const float* src = x.row(cols[e]).data();
      for (std::size_t c = 0; c < f; ++c) acc[c] += v * src[c];
    }
    float* dst = out.row(i).data();
    for (std::size_t c = 0; c < f; ++c) dst[c] = static_cast<float>(acc[c]);
  }
  return out;
}

HopFeatureSet Propagate(const PropagationOperator& op, const Matrix<float>& x,
                        int num_hops) {
  if (num_hops < 0) throw ConfigError("hop count must be non-negative");
  HopFeatureSet set;
  set.operator_id = op.operator_id();
  set.hops.reserve(num_hops + 1);
  set.hops.push_back(x);
  for (int r = 1; r <= num_hops; ++r) {
    set.hops.push_back(Spmm(op, set.hops.back()));
  }
  return set;
}

}  // namespace ppgnn
