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

// Dense kernels used by the models. Loop orders are fixed, so results are
// bit-reproducible for a given input.

#ifndef PPGNN_TENSOR_OPS_H_
#define PPGNN_TENSOR_OPS_H_

#include <cmath>
#include <cstdint>
#include <string>

#include "ppgnn/errors.h"
#include "ppgnn/matrix.h"
#include "ppgnn/rng.h"

namespace ppgnn::ops {

inline void RequireShape(bool ok, const char* op) {
  if (!ok) throw ShapeError(std::string(op) + ": shape mismatch");
}

// out = a * b  (m x k) * (k x n)
template <typename T>
void MatMul(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& out) {
  RequireShape(a.cols() == b.rows(), "matmul");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  out.resize(m, n);
  out.fill(T{0});
  for (std::size_t i = 0; i < m; ++i) {
    T* o = out.row(i).data();
    const T* ar = a.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const T av = ar[p];
      const T* br = b.row(p).data();
      for (std::size_t j = 0; j < n; ++j) o[j] += av * br[j];
    }
  }
}

template <typename T>
Matrix<T> MatMul(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out;
  MatMul(a, b, out);
  return out;
}

// out += a^T * b  (m x k)^T * (m x n) -> k x n
template <typename T>
void AddMatMulAtB(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& out) {
  RequireShape(a.rows() == b.rows() && out.rows() == a.cols() &&
                   out.cols() == b.cols(),
               "matmul_at_b");
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  for (std::size_t i = 0; i < m; ++i) {
    const T* ar = a.row(i).data();
    const T* br = b.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const T av = ar[p];
      T* o = out.row(p).data();
      for (std::size_t j = 0; j < n; ++j) o[j] += av * br[j];
    }
  }
}

// out += a * b^T  (m x n) * (k x n)^T -> m x k
template <typename T>
void AddMatMulABt(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& out) {
  RequireShape(a.cols() == b.cols() && out.rows() == a.rows() &&
                   out.cols() == b.rows(),
               "matmul_a_bt");
  const std::size_t m = a.rows(), n = a.cols(), k = b.rows();
  for (std::size_t i = 0; i < m; ++i) {
    const T* ar = a.row(i).data();
    T* o = out.row(i).data();
    for (std::size_t p = 0; p < k; ++p) {
      const T* br = b.row(p).data();
      T acc{0};
      for (std::size_t j = 0; j < n; ++j) acc += ar[j] * br[j];
      o[p] += acc;
    }
  }
}

// Adds the 1 x n row vector `bias` to every row.
template <typename T>
void AddRowVector(Matrix<T>& m, const Matrix<T>& bias) {
  RequireShape(bias.rows() == 1 && bias.cols() == m.cols(), "add_bias");
  const T* bv = bias.data();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T* r = m.row(i).data();
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] += bv[j];
  }
}

// out(0, j) += sum_i m(i, j)
template <typename T>
void AddColumnSums(const Matrix<T>& m, Matrix<T>& out) {
  RequireShape(out.rows() == 1 && out.cols() == m.cols(), "column_sums");
  T* o = out.data();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const T* r = m.row(i).data();
    for (std::size_t j = 0; j < m.cols(); ++j) o[j] += r[j];
  }
}

template <typename T>
void ReluInPlace(Matrix<T>& m) {
  for (T& v : m.values()) v = v > T{0} ? v : T{0};
}

// grad *= (activation > 0)
template <typename T>
void ReluBackwardInPlace(Matrix<T>& grad, const Matrix<T>& activation) {
  auto g = grad.values();
  auto a = activation.values();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(a[i] > T{0})) g[i] = T{0};
  }
}

// Counter-based dropout mask: element `index` of stream `tag` is kept iff a
// hash of (seed, tag, index) maps to [rate, 1). Replayable without storage.
inline bool DropoutKeep(std::uint64_t seed, std::uint64_t tag,
                        std::uint64_t index, double rate) {
  const std::uint64_t h = MixSeed(MixSeed(seed ^ MixSeed(tag)) + index);
  return static_cast<double>(h >> 11) * 0x1.0p-53 >= rate;
}

// Applies inverted dropout to columns [col_begin, col_begin + width) of m.
// Also used for the backward pass, where the same mask scales the gradient.
template <typename T>
void ApplyDropout(Matrix<T>& m, double rate, std::uint64_t seed,
                  std::uint64_t tag, std::size_t col_begin = 0,
                  std::size_t width = static_cast<std::size_t>(-1)) {
  if (rate <= 0.0) return;
  if (width == static_cast<std::size_t>(-1)) width = m.cols() - col_begin;
  const T scale = static_cast<T>(1.0 / (1.0 - rate));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    T* r = m.row(i).data() + col_begin;
    for (std::size_t j = 0; j < width; ++j) {
      r[j] = DropoutKeep(seed, tag, i * width + j, rate) ? r[j] * scale : T{0};
    }
  }
}

}  // namespace ppgnn::ops

#endif  // PPGNN_TENSOR_OPS_H_
