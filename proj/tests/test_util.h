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

// Helpers shared by the unit and acceptance tests. The dense routines here
// are deliberately naive reference implementations.

#ifndef PPGNN_TESTS_TEST_UTIL_H_
#define PPGNN_TESTS_TEST_UTIL_H_

#include <stdlib.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ppgnn/csr_graph.h"
#include "ppgnn/matrix.h"

namespace ppgnn::testing {

class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / "ppgnn_test_XXXXXX").string();
    if (mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline std::vector<char> ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void WriteText(const std::filesystem::path& path,
                      const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
}

// Erdos-Renyi directed edge list, self edges allowed.
inline std::vector<std::pair<NodeId, NodeId>> RandomEdges(std::uint64_t n,
                                                          double p,
                                                          std::mt19937_64& gen) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint64_t j = 0; j < n; ++j) {
      if (coin(gen)) edges.emplace_back(NodeId(i), NodeId(j));
    }
  }
  return edges;
}

template <typename T>
Matrix<T> RandomMatrix(std::size_t rows, std::size_t cols,
                       std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix<T> m(rows, cols);
  for (auto& v : m.values()) v = static_cast<T>(normal(gen));
  return m;
}

using Dense = std::vector<std::vector<double>>;

inline Dense DenseAdjacency(const CsrGraph& g) {
  Dense a(g.num_nodes(), std::vector<double>(g.num_nodes(), 0.0));
  for (std::uint64_t i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j : g.neighbors(i)) a[i][j] += 1.0;
  }
  return a;
}

// Normalized operator from first principles: A~ = A (+ I), degrees are row
// sums of A~, symmetric D^-1/2 A~ D^-1/2 or row D^-1 A~; zero-degree rows
// stay zero.
inline Dense DenseOperator(const CsrGraph& g, bool symmetric, bool self_loops) {
  Dense a = DenseAdjacency(g);
  const std::size_t n = a.size();
  if (self_loops) {
    for (std::size_t i = 0; i < n; ++i) a[i][i] += 1.0;
  }
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i] += a[i][j];
  }
  // Inverse of a zero degree is taken as 0 (directed graphs can point at
  // sink nodes).
  std::vector<double> inv(n, 0.0), inv_sqrt(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i] > 0) {
      inv[i] = 1.0 / d[i];
      inv_sqrt[i] = 1.0 / std::sqrt(d[i]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] *= symmetric ? inv_sqrt[i] * inv_sqrt[j] : inv[i];
    }
  }
  return a;
}

inline Dense DenseMul(const Dense& b, const Dense& x) {
  const std::size_t n = b.size();
  const std::size_t f = x.empty() ? 0 : x[0].size();
  Dense out(n, std::vector<double>(f, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (b[i][k] == 0.0) continue;
      for (std::size_t j = 0; j < f; ++j) out[i][j] += b[i][k] * x[k][j];
    }
  }
  return out;
}

template <typename T>
Dense ToDense(const Matrix<T>& m) {
  Dense out(m.rows(), std::vector<double>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

// ||got - want||_F / max(||want||_F, tiny).
template <typename T>
double RelativeFrobenius(const Matrix<T>& got, const Dense& want) {
  double diff = 0, norm = 0;
  for (std::size_t i = 0; i < want.size(); ++i) {
    for (std::size_t j = 0; j < want[i].size(); ++j) {
      const double d = static_cast<double>(got(i, j)) - want[i][j];
      diff += d * d;
      norm += want[i][j] * want[i][j];
    }
  }
  return std::sqrt(diff) / std::max(std::sqrt(norm), 1e-300);
}

}  // namespace ppgnn::testing

#endif  // PPGNN_TESTS_TEST_UTIL_H_
