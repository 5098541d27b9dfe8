// Copyright 2026 The qsac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace qsac::nn {

enum class Activation { ReLU, Identity };

struct LayerShape {
  std::size_t in = 0;
  std::size_t out = 0;
  Activation activation = Activation::Identity;

  std::size_t param_count() const { return out * in + out; }
  bool operator==(const LayerShape&) const = default;
};

/// Fully connected network with all parameters in one flat vector.
/// Layer k occupies [W_k (row-major, out x in), b_k] in order.
class DenseNet {
 public:
  DenseNet() = default;
  explicit DenseNet(std::vector<LayerShape> layers);

  /// ReLU hidden layers and an Identity output layer.
  static DenseNet mlp(std::size_t in, std::span<const std::size_t> hidden, std::size_t out);

  std::size_t input_dim() const { return layers_.front().in; }
  std::size_t output_dim() const { return layers_.back().out; }
  std::size_t param_count() const { return params_.size(); }
  const std::vector<LayerShape>& layers() const { return layers_; }

  std::span<const double> params() const { return params_; }
  std::span<double> params() { return params_; }

  std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
  std::size_t bias_offset(std::size_t layer) const {
    return offsets_[layer] + layers_[layer].in * layers_[layer].out;
  }

  /// Weights and biases uniform on [-1/sqrt(fan_in), 1/sqrt(fan_in)].
  void init_uniform(std::mt19937_64& rng);

 private:
  std::vector<LayerShape> layers_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

/// Activations recorded by forward(): inputs[k] feeds layer k and
/// pre[k] is its affine output before the activation.
struct Tape {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> pre;
};

struct ForwardResult {
  std::vector<double> y;
  Tape tape;
};

struct Gradients {
  std::vector<double> params;
  std::vector<double> input;
};

ForwardResult forward(const DenseNet& net, std::span<const double> x);

/// Output only; skips recording the tape.
std::vector<double> predict(const DenseNet& net, std::span<const double> x);

/// Gradients of upstream^T y with respect to the parameters and the input.
Gradients backward(const DenseNet& net, const Tape& tape, std::span<const double> upstream);

/// Accumulating variant: adds parameter gradients into param_grads and
/// returns the input gradient.
std::vector<double> backward_into(const DenseNet& net, const Tape& tape,
                                  std::span<const double> upstream,
                                  std::span<double> param_grads);

struct AdamState {
  explicit AdamState(std::size_t n_params, double step_size = 1e-3,
                     double beta1 = 0.9, double beta2 = 0.999, double epsilon = 1e-8);

  std::vector<double> m;
  std::vector<double> v;
  long long t = 0;
  double step_size;
  double beta1;
  double beta2;
  double epsilon;
};

/// Bias-corrected Adam step applied in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads);

/// target <- rho * target + (1 - rho) * online, in place.
void polyak_update(std::span<double> target, std::span<const double> online, double rho);

}  // namespace qsac::nn
