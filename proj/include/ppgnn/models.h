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

// Dense models over pre-propagated hop features, with hand-written backward
// passes.
//
//   SGC   logits = S_R W + b                      (last hop only)
//   SIGN  z_r = ReLU(S_r W_r + b_r), logits = MLP([z_0 | ... | z_R])
//   HOGA  tokens t_r = S_r P + p; one multi-head self-attention layer over
//         the R+1 tokens of each node; mean over attended tokens; output
//         projection; logits = MLP(pooled)
//
// MLPs use ReLU hidden layers with inverted dropout after each hidden ReLU;
// logits never see dropout. All models are templates over the scalar type so
// the float32 training path has a float64 twin for gradient checking.

#ifndef PPGNN_MODELS_H_
#define PPGNN_MODELS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ppgnn/matrix.h"

namespace ppgnn {

enum class ModelKind { kSgc, kSign, kHoga };

ModelKind ParseModelKind(std::string_view name);
std::string_view ModelKindName(ModelKind kind);

struct ModelConfig {
  ModelKind kind = ModelKind::kSgc;
  int hops = 3;  // R; the model consumes R+1 hop matrices
  std::size_t in_dim = 0;
  std::size_t num_classes = 0;
  std::size_t hidden = 64;  // SIGN per-hop width, HOGA d_model
  std::size_t heads = 4;    // HOGA only
  int mlp_layers = 2;       // linear layers in the output MLP
  double dropout = 0.0;

  // Throws ConfigError on inconsistent values.
  void Validate() const;
};

// Ordered, named parameter tensors. Gradients and optimizer moments use the
// same layout.
template <typename T>
struct Parameters {
  std::vector<std::string> names;
  std::vector<Matrix<T>> tensors;

  std::size_t size() const { return tensors.size(); }
  std::size_t num_scalars() const;
  Parameters ZerosLike() const;
  void Add(std::string name, std::size_t rows, std::size_t cols);
};

template <typename To, typename From>
Parameters<To> CastParameters(const Parameters<From>& p) {
  Parameters<To> out;
  out.names = p.names;
  for (const auto& t : p.tensors) out.tensors.push_back(Cast<To>(t));
  return out;
}

// Activations recorded by a forward pass. Each model extends it.
template <typename T>
struct Tape {
  virtual ~Tape() = default;
  bool train = false;
  std::uint64_t dropout_seed = 0;
  std::vector<const Matrix<T>*> inputs;  // not owned; must outlive backward
};

template <typename T>
struct ForwardResult {
  Matrix<T> logits;
  std::unique_ptr<Tape<T>> tape;
};

// Cached state of an output MLP.
template <typename T>
struct MlpTape {
  std::vector<Matrix<T>> layer_inputs;  // input of each layer, post dropout
  std::vector<Matrix<T>> activations;   // ReLU output of each hidden layer
};

template <typename T>
struct HogaTape : Tape<T> {
  std::vector<Matrix<T>> tokens;   // t_r, b x d
  std::vector<Matrix<T>> queries;  // per token
  std::vector<Matrix<T>> keys;
  std::vector<Matrix<T>> values;
  std::vector<Matrix<T>> outputs;  // attention output per token, b x d
  Matrix<T> probs;                 // b x (H * (R+1)^2) softmax weights
  Matrix<T> attended;              // mean of outputs over tokens, b x d
  Matrix<T> pooled;                // attended W_o + b_o
  MlpTape<T> mlp;
};

template <typename T>
class Model {
 public:
  virtual ~Model() = default;

  const ModelConfig& config() const { return config_; }
  Parameters<T>& params() { return params_; }
  const Parameters<T>& params() const { return params_; }

  // `hops` holds R+1 matrices with identical shape b x in_dim. Dropout masks
  // depend only on (dropout_seed, layer, position); eval mode ignores them.
  ForwardResult<T> Forward(std::span<const Matrix<T>> hops, bool train,
                           std::uint64_t dropout_seed) const;

  // Eval-mode logits.
  Matrix<T> Logits(std::span<const Matrix<T>> hops) const {
    return Forward(hops, false, 0).logits;
  }

  // Gradients of the upstream loss w.r.t. every parameter.
  Parameters<T> Backward(const Tape<T>& tape, const Matrix<T>& dlogits) const;

 protected:
  Model(ModelConfig config, Parameters<T> params)
      : config_(std::move(config)), params_(std::move(params)) {}

  virtual ForwardResult<T> DoForward(std::span<const Matrix<T>> hops,
                                     bool train,
                                     std::uint64_t dropout_seed) const = 0;
  virtual Parameters<T> DoBackward(const Tape<T>& tape,
                                   const Matrix<T>& dlogits) const = 0;

  ModelConfig config_;
  Parameters<T> params_;
};

// Empty parameter layout for a configuration, tensors zero-filled.
template <typename T>
Parameters<T> ParameterLayout(const ModelConfig& config);

// Weights uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
template <typename T>
void InitializeParameters(Parameters<T>& params, std::uint64_t seed);

template <typename T>
std::unique_ptr<Model<T>> CreateModel(const ModelConfig& config,
                                      std::uint64_t init_seed);

template <typename T>
std::unique_ptr<Model<T>> CreateModel(const ModelConfig& config,
                                      Parameters<T> params);

template <typename T>
struct LossResult {
  double loss = 0;
  Matrix<T> dlogits;
};

// Mean softmax cross-entropy; dlogits = (softmax - onehot) / b.
template <typename T>
LossResult<T> CrossEntropy(const Matrix<T>& logits,
                           std::span<const std::uint32_t> labels);

template <typename T>
Matrix<T> Softmax(const Matrix<T>& logits);

struct AdamOptions {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

template <typename T>
struct AdamState {
  AdamOptions options;
  std::uint64_t step = 0;
  Parameters<T> m;
  Parameters<T> v;

  static AdamState For(const Parameters<T>& params, AdamOptions options) {
    return {options, 0, params.ZerosLike(), params.ZerosLike()};
  }
};

// Bias-corrected Adam update.
template <typename T>
void AdamStep(Parameters<T>& params, const Parameters<T>& grads,
              AdamState<T>& state);

}  // namespace ppgnn

#endif  // PPGNN_MODELS_H_
