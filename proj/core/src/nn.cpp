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

#include "qsac/nn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsac::nn {

namespace {

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + " has length " + std::to_string(got) +
                                ", expected " + std::to_string(want));
  }
}

// y = W x + b for one layer.
void affine(const DenseNet& net, std::size_t k, std::span<const double> x, std::span<double> y) {
  const LayerShape& shape = net.layers()[k];
  const double* w = net.params().data() + net.weight_offset(k);
  const double* b = net.params().data() + net.bias_offset(k);
  const std::size_t n4 = shape.in & ~std::size_t{3};
  for (std::size_t o = 0; o < shape.out; ++o) {
    const double* row = w + o * shape.in;
    // Four independent partial sums so the loop vectorizes without
    // reassociation flags.
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n4; i += 4) {
      acc[0] += row[i] * x[i];
      acc[1] += row[i + 1] * x[i + 1];
      acc[2] += row[i + 2] * x[i + 2];
      acc[3] += row[i + 3] * x[i + 3];
    }
    double tail = 0.0;
    for (std::size_t i = n4; i < shape.in; ++i) tail += row[i] * x[i];
    y[o] = b[o] + ((acc[0] + acc[1]) + (acc[2] + acc[3]) + tail);
  }
}

void activate(Activation act, std::span<double> v) {
  if (act == Activation::ReLU) {
    for (double& x : v) x = x > 0.0 ? x : 0.0;
  }
}

}  // namespace

DenseNet::DenseNet(std::vector<LayerShape> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("network needs at least one layer");
  std::size_t total = 0;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (layers_[k].in == 0 || layers_[k].out == 0) {
      throw std::invalid_argument("layer dimensions must be positive");
    }
    if (k > 0 && layers_[k].in != layers_[k - 1].out) {
      throw std::invalid_argument("layer " + std::to_string(k) + " input " +
                                  std::to_string(layers_[k].in) +
                                  " does not match previous output " +
                                  std::to_string(layers_[k - 1].out));
    }
    offsets_.push_back(total);
    total += layers_[k].param_count();
  }
  params_.assign(total, 0.0);
}

DenseNet DenseNet::mlp(std::size_t in, std::span<const std::size_t> hidden, std::size_t out) {
  std::vector<LayerShape> layers;
  std::size_t prev = in;
  for (std::size_t h : hidden) {
    layers.push_back({prev, h, Activation::ReLU});
    prev = h;
  }
  layers.push_back({prev, out, Activation::Identity});
  return DenseNet(std::move(layers));
}

void DenseNet::init_uniform(std::mt19937_64& rng) {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(layers_[k].in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    const std::size_t begin = offsets_[k];
    const std::size_t end = begin + layers_[k].param_count();
    for (std::size_t i = begin; i < end; ++i) params_[i] = dist(rng);
  }
}

ForwardResult forward(const DenseNet& net, std::span<const double> x) {
  check_length(x.size(), net.input_dim(), "network input");
  ForwardResult result;
  const auto& layers = net.layers();
  result.tape.inputs.reserve(layers.size());
  result.tape.pre.reserve(layers.size());
  std::vector<double> current(x.begin(), x.end());
  for (std::size_t k = 0; k < layers.size(); ++k) {
    std::vector<double> pre(layers[k].out);
    affine(net, k, current, pre);
    std::vector<double> post = pre;
    activate(layers[k].activation, post);
    result.tape.inputs.push_back(std::move(current));
    result.tape.pre.push_back(std::move(pre));
    current = std::move(post);
  }
  result.y = std::move(current);
  return result;
}

std::vector<double> predict(const DenseNet& net, std::span<const double> x) {
  check_length(x.size(), net.input_dim(), "network input");
  std::vector<double> current(x.begin(), x.end());
  std::vector<double> next;
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    next.resize(net.layers()[k].out);
    affine(net, k, current, next);
    activate(net.layers()[k].activation, next);
    std::swap(current, next);
  }
  return current;
}

std::vector<double> backward_into(const DenseNet& net, const Tape& tape,
                                  std::span<const double> upstream,
                                  std::span<double> param_grads) {
  const auto& layers = net.layers();
  if (tape.inputs.size() != layers.size() || tape.pre.size() != layers.size()) {
    throw std::invalid_argument("tape does not match network depth");
  }
  check_length(upstream.size(), net.output_dim(), "upstream gradient");
  check_length(param_grads.size(), net.param_count(), "parameter gradient buffer");

  std::vector<double> delta(upstream.begin(), upstream.end());
  for (std::size_t k = layers.size(); k-- > 0;) {
    const LayerShape& shape = layers[k];
    const std::vector<double>& in = tape.inputs[k];
    const std::vector<double>& pre = tape.pre[k];
    if (in.size() != shape.in || pre.size() != shape.out) {
      throw std::invalid_argument("tape does not match layer " + std::to_string(k));
    }
    if (shape.activation == Activation::ReLU) {
      for (std::size_t o = 0; o < shape.out; ++o) {
        if (pre[o] <= 0.0) delta[o] = 0.0;
      }
    }
    const double* w = net.params().data() + net.weight_offset(k);
    double* gw = param_grads.data() + net.weight_offset(k);
    double* gb = param_grads.data() + net.bias_offset(k);
    std::vector<double> next(shape.in, 0.0);
    for (std::size_t o = 0; o < shape.out; ++o) {
      const double d = delta[o];
      gb[o] += d;
      if (d == 0.0) continue;
      const double* row = w + o * shape.in;
      double* grow = gw + o * shape.in;
      for (std::size_t i = 0; i < shape.in; ++i) {
        grow[i] += d * in[i];
        next[i] += d * row[i];
      }
    }
    delta = std::move(next);
  }
  return delta;
}

Gradients backward(const DenseNet& net, const Tape& tape, std::span<const double> upstream) {
  Gradients g;
  g.params.assign(net.param_count(), 0.0);
  g.input = backward_into(net, tape, upstream, g.params);
  return g;
}

AdamState::AdamState(std::size_t n_params, double step_size, double beta1, double beta2,
                     double epsilon)
    : m(n_params, 0.0),
      v(n_params, 0.0),
      step_size(step_size),
      beta1(beta1),
      beta2(beta2),
      epsilon(epsilon) {}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
  check_length(params.size(), state.m.size(), "Adam parameters");
  check_length(grads.size(), state.m.size(), "Adam gradients");
  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= state.step_size * m_hat / (std::sqrt(v_hat) + state.epsilon);
  }
}

void polyak_update(std::span<double> target, std::span<const double> online, double rho) {
  check_length(online.size(), target.size(), "online parameters");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("polyak rho must lie in [0, 1]");
  for (std::size_t i = 0; i < target.size(); ++i) {
    target[i] = rho * target[i] + (1.0 - rho) * online[i];
  }
}

}  // namespace qsac::nn
