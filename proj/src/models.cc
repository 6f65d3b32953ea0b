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

#include "ppgnn/models.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppgnn/errors.h"
#include "ppgnn/rng.h"
#include "ppgnn/tensor_ops.h"

namespace ppgnn {
namespace {

// Dropout stream tags.
constexpr std::uint64_t kHopDropoutTag = 0;
constexpr std::uint64_t kMlpDropoutTag = 1000;

std::vector<std::size_t> MlpWidths(std::size_t in, std::size_t hidden,
                                   std::size_t out, int layers) {
  std::vector<std::size_t> widths{in};
  for (int l = 0; l + 1 < layers; ++l) widths.push_back(hidden);
  widths.push_back(out);
  return widths;
}

template <typename T>
void AddMlpLayout(Parameters<T>& p, std::size_t in, std::size_t hidden,
                  std::size_t out, int layers) {
  const auto widths = MlpWidths(in, hidden, out, layers);
  for (int l = 0; l < layers; ++l) {
    p.Add("mlp" + std::to_string(l) + ".W", widths[l], widths[l + 1]);
    p.Add("mlp" + std::to_string(l) + ".b", 1, widths[l + 1]);
  }
}

// Runs the output MLP whose parameters start at index `first`.
template <typename T>
Matrix<T> MlpForward(const Parameters<T>& p, std::size_t first, int layers,
                     Matrix<T> x, bool train, double rate, std::uint64_t seed,
                     MlpTape<T>& tape) {
  for (int l = 0; l < layers; ++l) {
    const Matrix<T>& w = p.tensors[first + 2 * l];
    const Matrix<T>& b = p.tensors[first + 2 * l + 1];
    Matrix<T> h = ops::MatMul(x, w);
    ops::AddRowVector(h, b);
    if (l + 1 < layers) {
      ops::ReluInPlace(h);
      tape.activations.push_back(h);
      if (train) ops::ApplyDropout(h, rate, seed, kMlpDropoutTag + l);
    }
    tape.layer_inputs.push_back(std::move(x));
    x = std::move(h);
  }
  return x;
}

// Accumulates MLP parameter gradients and returns d(loss)/d(MLP input).
template <typename T>
Matrix<T> MlpBackward(const Parameters<T>& p, std::size_t first, int layers,
                      const MlpTape<T>& tape, Matrix<T> d, bool train,
                      double rate, std::uint64_t seed, Parameters<T>& grads) {
  for (int l = layers - 1; l >= 0; --l) {
    const Matrix<T>& w = p.tensors[first + 2 * l];
    ops::AddMatMulAtB(tape.layer_inputs[l], d, grads.tensors[first + 2 * l]);
    ops::AddColumnSums(d, grads.tensors[first + 2 * l + 1]);
    Matrix<T> dx(d.rows(), w.rows());
    ops::AddMatMulABt(d, w, dx);
    if (l > 0) {
      if (train) ops::ApplyDropout(dx, rate, seed, kMlpDropoutTag + (l - 1));
      ops::ReluBackwardInPlace(dx, tape.activations[l - 1]);
    }
    d = std::move(dx);
  }
  return d;
}

// out = a * w + bias
template <typename T>
Matrix<T> Affine(const Matrix<T>& a, const Matrix<T>& w, const Matrix<T>& b) {
  Matrix<T> out = ops::MatMul(a, w);
  ops::AddRowVector(out, b);
  return out;
}

// ---------------------------------------------------------------------------

template <typename T>
class SgcModel final : public Model<T> {
 public:
  SgcModel(ModelConfig c, Parameters<T> p) : Model<T>(std::move(c), std::move(p)) {}

 protected:
  ForwardResult<T> DoForward(std::span<const Matrix<T>> hops, bool train,
                             std::uint64_t seed) const override {
    auto tape = std::make_unique<Tape<T>>();
    tape->train = train;
    tape->dropout_seed = seed;
    tape->inputs.push_back(&hops[this->config_.hops]);
    const auto& p = this->params_.tensors;
    return {Affine(hops[this->config_.hops], p[0], p[1]), std::move(tape)};
  }

  Parameters<T> DoBackward(const Tape<T>& tape,
                           const Matrix<T>& dlogits) const override {
    Parameters<T> g = this->params_.ZerosLike();
    ops::AddMatMulAtB(*tape.inputs[0], dlogits, g.tensors[0]);
    ops::AddColumnSums(dlogits, g.tensors[1]);
    return g;
  }
};

template <typename T>
struct SignTape : Tape<T> {
  Matrix<T> hop_activations;  // [z_0 | ... | z_R] before dropout
  MlpTape<T> mlp;
};

template <typename T>
class SignModel final : public Model<T> {
 public:
  SignModel(ModelConfig c, Parameters<T> p) : Model<T>(std::move(c), std::move(p)) {}

 protected:
  ForwardResult<T> DoForward(std::span<const Matrix<T>> hops, bool train,
                             std::uint64_t seed) const override {
    const ModelConfig& c = this->config_;
    const auto& p = this->params_.tensors;
    const std::size_t b = hops[0].rows();
    const std::size_t d = c.hidden;
    const std::size_t num_hops = c.hops + 1;

    auto tape = std::make_unique<SignTape<T>>();
    tape->train = train;
    tape->dropout_seed = seed;
    Matrix<T> concat(b, d * num_hops);
    for (std::size_t r = 0; r < num_hops; ++r) {
      tape->inputs.push_back(&hops[r]);
      Matrix<T> z = Affine(hops[r], p[2 * r], p[2 * r + 1]);
      ops::ReluInPlace(z);
      for (std::size_t i = 0; i < b; ++i) {
        std::copy_n(z.row(i).data(), d, concat.row(i).data() + r * d);
      }
    }
    tape->hop_activations = concat;
    if (train) ops::ApplyDropout(concat, c.dropout, seed, kHopDropoutTag);
    Matrix<T> logits = MlpForward(this->params_, 2 * num_hops, c.mlp_layers,
                                  std::move(concat), train, c.dropout, seed,
                                  tape->mlp);
    return {std::move(logits), std::move(tape)};
  }

  Parameters<T> DoBackward(const Tape<T>& base,
                           const Matrix<T>& dlogits) const override {
    const auto& tape = static_cast<const SignTape<T>&>(base);
    const ModelConfig& c = this->config_;
    const std::size_t d = c.hidden;
    const std::size_t num_hops = c.hops + 1;
    Parameters<T> g = this->params_.ZerosLike();

    Matrix<T> dconcat =
        MlpBackward(this->params_, 2 * num_hops, c.mlp_layers, tape.mlp,
                    dlogits, tape.train, c.dropout, tape.dropout_seed, g);
    if (tape.train) {
      ops::ApplyDropout(dconcat, c.dropout, tape.dropout_seed, kHopDropoutTag);
    }
    ops::ReluBackwardInPlace(dconcat, tape.hop_activations);

    const std::size_t b = dconcat.rows();
    Matrix<T> dz(b, d);
    for (std::size_t r = 0; r < num_hops; ++r) {
      for (std::size_t i = 0; i < b; ++i) {
        std::copy_n(dconcat.row(i).data() + r * d, d, dz.row(i).data());
      }
      ops::AddMatMulAtB(*tape.inputs[r], dz, g.tensors[2 * r]);
      ops::AddColumnSums(dz, g.tensors[2 * r + 1]);
    }
    return g;
  }
};

// HOGA parameter indices.
enum HogaParam : std::size_t {
  kInW, kInB, kQW, kQB, kKW, kKB, kVW, kVB, kOutW, kOutB, kHogaMlpFirst
};

template <typename T>
class HogaModel final : public Model<T> {
 public:
  HogaModel(ModelConfig c, Parameters<T> p) : Model<T>(std::move(c), std::move(p)) {}

 protected:
  ForwardResult<T> DoForward(std::span<const Matrix<T>> hops, bool train,
                             std::uint64_t seed) const override {
    const ModelConfig& c = this->config_;
    const auto& p = this->params_.tensors;
    const std::size_t b = hops[0].rows();
    const std::size_t d = c.hidden;
    const std::size_t heads = c.heads;
    const std::size_t hd = d / heads;
    const std::size_t nt = c.hops + 1;
    const T scale = static_cast<T>(1.0 / std::sqrt(static_cast<double>(hd)));

    auto tape = std::make_unique<HogaTape<T>>();
    tape->train = train;
    tape->dropout_seed = seed;
    for (std::size_t r = 0; r < nt; ++r) {
      tape->inputs.push_back(&hops[r]);
      tape->tokens.push_back(Affine(hops[r], p[kInW], p[kInB]));
      tape->queries.push_back(Affine(tape->tokens[r], p[kQW], p[kQB]));
      tape->keys.push_back(Affine(tape->tokens[r], p[kKW], p[kKB]));
      tape->values.push_back(Affine(tape->tokens[r], p[kVW], p[kVB]));
      tape->outputs.emplace_back(b, d);
    }
    tape->probs = Matrix<T>(b, heads * nt * nt);

    std::vector<T> scores(nt);
    for (std::size_t n = 0; n < b; ++n) {
      T* probs = tape->probs.row(n).data();
      for (std::size_t h = 0; h < heads; ++h) {
        const std::size_t off = h * hd;
        for (std::size_t r = 0; r < nt; ++r) {
          const T* q = tape->queries[r].row(n).data() + off;
          T max_score = -INFINITY;
          for (std::size_t s = 0; s < nt; ++s) {
            const T* k = tape->keys[s].row(n).data() + off;
            T dot{0};
            for (std::size_t j = 0; j < hd; ++j) dot += q[j] * k[j];
            scores[s] = dot * scale;
            max_score = std::max(max_score, scores[s]);
          }
          T total{0};
          for (std::size_t s = 0; s < nt; ++s) {
            scores[s] = std::exp(scores[s] - max_score);
            total += scores[s];
          }
          T* pr = probs + (h * nt + r) * nt;
          T* o = tape->outputs[r].row(n).data() + off;
          for (std::size_t s = 0; s < nt; ++s) {
            pr[s] = scores[s] / total;
            const T* v = tape->values[s].row(n).data() + off;
            for (std::size_t j = 0; j < hd; ++j) o[j] += pr[s] * v[j];
          }
        }
      }
    }

    tape->attended = Matrix<T>(b, d);
    const T inv_nt = static_cast<T>(1.0 / static_cast<double>(nt));
    for (std::size_t r = 0; r < nt; ++r) {
      auto dst = tape->attended.values();
      auto src = tape->outputs[r].values();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
    for (T& v : tape->attended.values()) v *= inv_nt;

    tape->pooled = Affine(tape->attended, p[kOutW], p[kOutB]);
    Matrix<T> logits = MlpForward(this->params_, kHogaMlpFirst, c.mlp_layers,
                                  tape->pooled, train, c.dropout, seed,
                                  tape->mlp);
    return {std::move(logits), std::move(tape)};
  }

  Parameters<T> DoBackward(const Tape<T>& base,
                           const Matrix<T>& dlogits) const override {
    const auto& tape = static_cast<const HogaTape<T>&>(base);
    const ModelConfig& c = this->config_;
    const auto& p = this->params_.tensors;
    const std::size_t d = c.hidden;
    const std::size_t heads = c.heads;
    const std::size_t hd = d / heads;
    const std::size_t nt = c.hops + 1;
    const T scale = static_cast<T>(1.0 / std::sqrt(static_cast<double>(hd)));
    Parameters<T> g = this->params_.ZerosLike();
    auto& gt = g.tensors;

    Matrix<T> dpooled =
        MlpBackward(this->params_, kHogaMlpFirst, c.mlp_layers, tape.mlp,
                    dlogits, tape.train, c.dropout, tape.dropout_seed, g);
    ops::AddMatMulAtB(tape.attended, dpooled, gt[kOutW]);
    ops::AddColumnSums(dpooled, gt[kOutB]);
    const std::size_t b = dpooled.rows();
    // Every token's attention output receives the same gradient.
    Matrix<T> dout(b, d);
    ops::AddMatMulABt(dpooled, p[kOutW], dout);
    const T inv_nt = static_cast<T>(1.0 / static_cast<double>(nt));
    for (T& v : dout.values()) v *= inv_nt;

    std::vector<Matrix<T>> dq, dk, dv;
    for (std::size_t r = 0; r < nt; ++r) {
      dq.emplace_back(b, d);
      dk.emplace_back(b, d);
      dv.emplace_back(b, d);
    }
    std::vector<T> dprob(nt);
    for (std::size_t n = 0; n < b; ++n) {
      const T* probs = tape.probs.row(n).data();
      const T* go = dout.row(n).data();
      for (std::size_t h = 0; h < heads; ++h) {
        const std::size_t off = h * hd;
        for (std::size_t r = 0; r < nt; ++r) {
          const T* pr = probs + (h * nt + r) * nt;
          T weighted{0};
          for (std::size_t s = 0; s < nt; ++s) {
            const T* v = tape.values[s].row(n).data() + off;
            T* gv = dv[s].row(n).data() + off;
            T dot{0};
            for (std::size_t j = 0; j < hd; ++j) {
              dot += go[off + j] * v[j];
              gv[j] += pr[s] * go[off + j];
            }
            dprob[s] = dot;
            weighted += pr[s] * dot;
          }
          const T* q = tape.queries[r].row(n).data() + off;
          T* gq = dq[r].row(n).data() + off;
          for (std::size_t s = 0; s < nt; ++s) {
            const T dscore = pr[s] * (dprob[s] - weighted) * scale;
            const T* k = tape.keys[s].row(n).data() + off;
            T* gk = dk[s].row(n).data() + off;
            for (std::size_t j = 0; j < hd; ++j) {
              gq[j] += dscore * k[j];
              gk[j] += dscore * q[j];
            }
          }
        }
      }
    }

    Matrix<T> dtok(b, d);
    for (std::size_t r = 0; r < nt; ++r) {
      ops::AddMatMulAtB(tape.tokens[r], dq[r], gt[kQW]);
      ops::AddColumnSums(dq[r], gt[kQB]);
      ops::AddMatMulAtB(tape.tokens[r], dk[r], gt[kKW]);
      ops::AddColumnSums(dk[r], gt[kKB]);
      ops::AddMatMulAtB(tape.tokens[r], dv[r], gt[kVW]);
      ops::AddColumnSums(dv[r], gt[kVB]);
      dtok.fill(T{0});
      ops::AddMatMulABt(dq[r], p[kQW], dtok);
      ops::AddMatMulABt(dk[r], p[kKW], dtok);
      ops::AddMatMulABt(dv[r], p[kVW], dtok);
      ops::AddMatMulAtB(*tape.inputs[r], dtok, gt[kInW]);
      ops::AddColumnSums(dtok, gt[kInB]);
    }
    return g;
  }
};

}  // namespace

ModelKind ParseModelKind(std::string_view name) {
  if (name == "sgc" || name == "SGC") return ModelKind::kSgc;
  if (name == "sign" || name == "SIGN") return ModelKind::kSign;
  if (name == "hoga" || name == "HOGA") return ModelKind::kHoga;
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected sgc|sign|hoga)");
}

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kSgc:
      return "sgc";
    case ModelKind::kSign:
      return "sign";
    case ModelKind::kHoga:
      return "hoga";
  }
  return "?";
}

void ModelConfig::Validate() const {
  if (hops < 0) throw ConfigError("hops must be >= 0");
  if (in_dim == 0) throw ConfigError("input dimension must be >= 1");
  if (num_classes < 1) throw ConfigError("num_classes must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ConfigError("dropout must be in [0, 1)");
  }
  if (kind != ModelKind::kSgc) {
    if (hidden == 0) throw ConfigError("hidden must be >= 1");
    if (mlp_layers < 1) throw ConfigError("mlp_layers must be >= 1");
  }
  if (kind == ModelKind::kHoga && (heads == 0 || hidden % heads != 0)) {
    throw ConfigError("HOGA hidden (" + std::to_string(hidden) +
                      ") must be divisible by heads (" +
                      std::to_string(heads) + ")");
  }
}

template <typename T>
std::size_t Parameters<T>::num_scalars() const {
  std::size_t n = 0;
  for (const auto& t : tensors) n += t.size();
  return n;
}

template <typename T>
Parameters<T> Parameters<T>::ZerosLike() const {
  Parameters out;
  out.names = names;
  out.tensors.reserve(tensors.size());
  for (const auto& t : tensors) out.tensors.emplace_back(t.rows(), t.cols());
  return out;
}

template <typename T>
void Parameters<T>::Add(std::string name, std::size_t rows, std::size_t cols) {
  names.push_back(std::move(name));
  tensors.emplace_back(rows, cols);
}

template <typename T>
Parameters<T> ParameterLayout(const ModelConfig& c) {
  c.Validate();
  Parameters<T> p;
  const std::size_t f = c.in_dim;
  const std::size_t d = c.hidden;
  switch (c.kind) {
    case ModelKind::kSgc:
      p.Add("W", f, c.num_classes);
      p.Add("b", 1, c.num_classes);
      break;
    case ModelKind::kSign:
      for (int r = 0; r <= c.hops; ++r) {
        p.Add("hop" + std::to_string(r) + ".W", f, d);
        p.Add("hop" + std::to_string(r) + ".b", 1, d);
      }
      AddMlpLayout(p, d * (c.hops + 1), d, c.num_classes, c.mlp_layers);
      break;
    case ModelKind::kHoga:
      p.Add("in.W", f, d);
      p.Add("in.b", 1, d);
      for (const char* name : {"q", "k", "v", "out"}) {
        p.Add(std::string(name) + ".W", d, d);
        p.Add(std::string(name) + ".b", 1, d);
      }
      AddMlpLayout(p, d, d, c.num_classes, c.mlp_layers);
      break;
  }
  return p;
}

template <typename T>
void InitializeParameters(Parameters<T>& params, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = 0; i < params.size(); ++i) {
    Matrix<T>& t = params.tensors[i];
    if (params.names[i].ends_with("b")) {
      t.fill(T{0});
      continue;
    }
    const double limit =
        std::sqrt(6.0 / static_cast<double>(t.rows() + t.cols()));
    for (T& v : t.values()) {
      v = static_cast<T>((2.0 * rng.Uniform() - 1.0) * limit);
    }
  }
}

template <typename T>
std::unique_ptr<Model<T>> CreateModel(const ModelConfig& config,
                                      Parameters<T> params) {
  const Parameters<T> layout = ParameterLayout<T>(config);
  if (layout.size() != params.size()) {
    throw ShapeError("parameter count does not match model layout");
  }
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout.tensors[i].rows() != params.tensors[i].rows() ||
        layout.tensors[i].cols() != params.tensors[i].cols()) {
      throw ShapeError("parameter '" + layout.names[i] +
                       "' has the wrong shape");
    }
  }
  switch (config.kind) {
    case ModelKind::kSgc:
      return std::make_unique<SgcModel<T>>(config, std::move(params));
    case ModelKind::kSign:
      return std::make_unique<SignModel<T>>(config, std::move(params));
    case ModelKind::kHoga:
      return std::make_unique<HogaModel<T>>(config, std::move(params));
  }
  throw ConfigError("unknown model kind");
}

template <typename T>
std::unique_ptr<Model<T>> CreateModel(const ModelConfig& config,
                                      std::uint64_t init_seed) {
  Parameters<T> params = ParameterLayout<T>(config);
  InitializeParameters(params, init_seed);
  return CreateModel<T>(config, std::move(params));
}

template <typename T>
ForwardResult<T> Model<T>::Forward(std::span<const Matrix<T>> hops, bool train,
                                   std::uint64_t dropout_seed) const {
  if (hops.size() != static_cast<std::size_t>(config_.hops) + 1) {
    throw ShapeError("model expects " + std::to_string(config_.hops + 1) +
                     " hop matrices, got " + std::to_string(hops.size()));
  }
  for (const auto& h : hops) {
    if (h.rows() != hops[0].rows() || h.cols() != config_.in_dim) {
      throw ShapeError("hop matrices must all be b x " +
                       std::to_string(config_.in_dim));
    }
  }
  return DoForward(hops, train, dropout_seed);
}

template <typename T>
Parameters<T> Model<T>::Backward(const Tape<T>& tape,
                                 const Matrix<T>& dlogits) const {
  if (tape.inputs.empty() || dlogits.rows() != tape.inputs[0]->rows() ||
      dlogits.cols() != config_.num_classes) {
    throw ShapeError("dlogits does not match the recorded forward pass");
  }
  return DoBackward(tape, dlogits);
}

template <typename T>
Matrix<T> Softmax(const Matrix<T>& logits) {
  Matrix<T> out(logits.rows(), logits.cols());
  for (std::size_t i = 0; i < logits.rows(); ++i) {
    const auto row = logits.row(i);
    const double max = *std::max_element(row.begin(), row.end());
    double total = 0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      total += std::exp(static_cast<double>(row[j]) - max);
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
      out(i, j) =
          static_cast<T>(std::exp(static_cast<double>(row[j]) - max) / total);
    }
  }
  return out;
}

template <typename T>
LossResult<T> CrossEntropy(const Matrix<T>& logits,
                           std::span<const std::uint32_t> labels) {
  if (labels.size() != logits.rows()) {
    throw ShapeError("cross_entropy: label count does not match logits");
  }
  const std::size_t b = logits.rows();
  const std::size_t c = logits.cols();
  LossResult<T> result;
  result.dlogits = Matrix<T>(b, c);
  if (b == 0) return result;
  const double inv_b = 1.0 / static_cast<double>(b);
  std::vector<double> shifted(c);
  double total = 0;
  for (std::size_t i = 0; i < b; ++i) {
    if (labels[i] >= c) {
      throw DataError("label " + std::to_string(labels[i]) +
                      " out of range for " + std::to_string(c) + " classes");
    }
    const auto row = logits.row(i);
    const double max = *std::max_element(row.begin(), row.end());
    double sum = 0;
    for (std::size_t j = 0; j < c; ++j) {
      shifted[j] = static_cast<double>(row[j]) - max;
      sum += std::exp(shifted[j]);
    }
    const double log_sum = std::log(sum);
    total += log_sum - shifted[labels[i]];
    T* d = result.dlogits.row(i).data();
    for (std::size_t j = 0; j < c; ++j) {
      const double prob = std::exp(shifted[j] - log_sum);
      d[j] = static_cast<T>((prob - (j == labels[i] ? 1.0 : 0.0)) * inv_b);
    }
  }
  result.loss = total * inv_b;
  return result;
}

template <typename T>
void AdamStep(Parameters<T>& params, const Parameters<T>& grads,
              AdamState<T>& state) {
  if (grads.size() != params.size() || state.m.size() != params.size()) {
    throw ShapeError("adam: parameter/gradient/state layouts differ");
  }
  const AdamOptions& o = state.options;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(o.beta1, t);
  const double correction2 = 1.0 - std::pow(o.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto p = params.tensors[k].values();
    auto g = grads.tensors[k].values();
    auto m = state.m.tensors[k].values();
    auto v = state.v.tensors[k].values();
    if (g.size() != p.size() || m.size() != p.size()) {
      throw ShapeError("adam: shape mismatch in '" + params.names[k] + "'");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double gi = g[i];
      const double mi = o.beta1 * m[i] + (1.0 - o.beta1) * gi;
      const double vi = o.beta2 * v[i] + (1.0 - o.beta2) * gi * gi;
      m[i] = static_cast<T>(mi);
      v[i] = static_cast<T>(vi);
      const double m_hat = mi / correction1;
      const double v_hat = vi / correction2;
      p[i] = static_cast<T>(p[i] - o.lr * m_hat / (std::sqrt(v_hat) + o.eps));
    }
  }
}

#define PPGNN_INSTANTIATE_MODELS(T)                                           \
  template struct Parameters<T>;                                              \
  template class Model<T>;                                                    \
  template Parameters<T> ParameterLayout<T>(const ModelConfig&);              \
  template void InitializeParameters<T>(Parameters<T>&, std::uint64_t);       \
  template std::unique_ptr<Model<T>> CreateModel<T>(const ModelConfig&,       \
                                                    std::uint64_t);           \
  template std::unique_ptr<Model<T>> CreateModel<T>(const ModelConfig&,       \
                                                    Parameters<T>);           \
  template Matrix<T> Softmax<T>(const Matrix<T>&);                            \
  template LossResult<T> CrossEntropy<T>(const Matrix<T>&,                    \
                                         std::span<const std::uint32_t>);     \
  template void AdamStep<T>(Parameters<T>&, const Parameters<T>&,             \
                            AdamState<T>&);

PPGNN_INSTANTIATE_MODELS(float)
PPGNN_INSTANTIATE_MODELS(double)

#undef PPGNN_INSTANTIATE_MODELS

}  // namespace ppgnn
