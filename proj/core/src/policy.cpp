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

#include "qsac/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsac {

namespace {

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

void check_len(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + " has length " + std::to_string(got) +
                                ", expected " + std::to_string(want));
  }
}

double softplus(double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x))); }

}  // namespace

double log1m_tanh_sq(double u) {
  return 2.0 * (std::numbers::ln2 - u - softplus(-2.0 * u));
}

Policy::Policy(ClassicalPolicy p) : impl_(std::move(p)) {
  const auto& net = std::get<ClassicalPolicy>(impl_).net;
  if (net.output_dim() % 2 != 0) throw std::invalid_argument("policy output must be 2 * action_dim");
  state_dim_ = net.input_dim();
  action_dim_ = net.output_dim() / 2;
}

Policy::Policy(HybridPolicy p) : impl_(std::move(p)) {
  const auto& h = std::get<HybridPolicy>(impl_);
  const VqcArch arch = arch_of(h.circuit);
  if (h.head.input_dim() != static_cast<std::size_t>(arch.n_qubits)) {
    throw std::invalid_argument("head input must equal the circuit's qubit count");
  }
  if (h.head.layers().size() != 1 || h.head.output_dim() % 2 != 0) {
    throw std::invalid_argument("head must be one linear layer with 2 * action_dim outputs");
  }
  check_len(h.input_scale.size(), arch.n_qubits, "input scale");
  state_dim_ = arch.n_qubits;
  action_dim_ = h.head.output_dim() / 2;
}

Policy Policy::classical(std::size_t state_dim, std::size_t action_dim,
                         std::span<const std::size_t> hidden, std::mt19937_64& rng) {
  ClassicalPolicy p{nn::DenseNet::mlp(state_dim, hidden, 2 * action_dim)};
  p.net.init_uniform(rng);
  return Policy(std::move(p));
}

Policy Policy::hybrid(const VqcArch& arch, std::size_t action_dim,
                      std::vector<double> input_scale, std::mt19937_64& rng) {
  HybridPolicy p{init_params(arch, rng),
                 nn::DenseNet({{static_cast<std::size_t>(arch.n_qubits), 2 * action_dim,
                                nn::Activation::Identity}}),
                 std::move(input_scale)};
  p.head.init_uniform(rng);
  return Policy(std::move(p));
}

std::size_t Policy::param_count() const {
  if (const auto* h = std::get_if<HybridPolicy>(&impl_)) {
    return count_params(arch_of(h->circuit)) + h->head.param_count();
  }
  return std::get<ClassicalPolicy>(impl_).net.param_count();
}

std::vector<double> Policy::flat_params() const {
  if (const auto* h = std::get_if<HybridPolicy>(&impl_)) {
    const auto c = flat_of(h->circuit);
    std::vector<double> out(c.begin(), c.end());
    out.insert(out.end(), h->head.params().begin(), h->head.params().end());
    return out;
  }
  const auto p = std::get<ClassicalPolicy>(impl_).net.params();
  return {p.begin(), p.end()};
}

void Policy::set_flat_params(std::span<const double> flat) {
  check_len(flat.size(), param_count(), "policy parameters");
  if (auto* h = std::get_if<HybridPolicy>(&impl_)) {
    auto c = flat_of(h->circuit);
    std::copy_n(flat.begin(), c.size(), c.begin());
    std::copy(flat.begin() + c.size(), flat.end(), h->head.params().begin());
    return;
  }
  std::copy(flat.begin(), flat.end(), std::get<ClassicalPolicy>(impl_).net.params().begin());
}

PolicyForward policy_forward(const Policy& policy, std::span<const double> s) {
  check_len(s.size(), policy.state_dim(), "policy input");
  PolicyForward out;
  nn::ForwardResult net_out;
  if (policy.is_hybrid()) {
    const HybridPolicy& h = policy.as_hybrid();
    out.tape.circuit_input.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out.tape.circuit_input[i] = h.input_scale[i] * s[i];
    const std::vector<double> z = forward(h.circuit, out.tape.circuit_input);
    net_out = nn::forward(h.head, z);
  } else {
    net_out = nn::forward(policy.as_classical().net, s);
  }
  const std::size_t d = policy.action_dim();
  out.dist.mu.assign(net_out.y.begin(), net_out.y.begin() + d);
  out.dist.log_sigma.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    out.dist.log_sigma[i] = std::clamp(net_out.y[d + i], kLogSigmaMin, kLogSigmaMax);
  }
  out.tape.raw_output = std::move(net_out.y);
  out.tape.net_tape = std::move(net_out.tape);
  return out;
}

void policy_backward(const Policy& policy, const PolicyTape& tape,
                     std::span<const double> d_mu, std::span<const double> d_log_sigma,
                     std::span<double> grad) {
  const std::size_t d = policy.action_dim();
  check_len(d_mu.size(), d, "mu gradient");
  check_len(d_log_sigma.size(), d, "log-sigma gradient");
  check_len(grad.size(), policy.param_count(), "policy gradient buffer");
  check_len(tape.raw_output.size(), 2 * d, "policy tape output");

  std::vector<double> upstream(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    upstream[i] = d_mu[i];
    const double raw = tape.raw_output[d + i];
    const bool inside = raw >= kLogSigmaMin && raw <= kLogSigmaMax;
    upstream[d + i] = inside ? d_log_sigma[i] : 0.0;
  }

  if (!policy.is_hybrid()) {
    nn::backward_into(policy.as_classical().net, tape.net_tape, upstream, grad);
    return;
  }
  const HybridPolicy& h = policy.as_hybrid();
  const std::size_t n_circuit = count_params(arch_of(h.circuit));
  const std::vector<double> dz =
      nn::backward_into(h.head, tape.net_tape, upstream, grad.subspan(n_circuit));
  const VqcGradient gc = h.gradient == CircuitGradient::Adjoint
                             ? grad_adjoint(h.circuit, tape.circuit_input, dz)
                             : grad_parameter_shift(h.circuit, tape.circuit_input, dz);
  for (std::size_t i = 0; i < n_circuit; ++i) grad[i] += gc[i];
}

SquashedSample sample_squashed(const PolicyDist& dist, std::span<const double> eps,
                               double a_max) {
  const std::size_t d = dist.mu.size();
  check_len(dist.log_sigma.size(), d, "log-sigma");
  check_len(eps.size(), d, "noise");
  SquashedSample out;
  out.action.resize(d);
  out.pre_squash.resize(d);
  const double log_a_max = std::log(a_max);
  for (std::size_t i = 0; i < d; ++i) {
    const double log_sigma = std::clamp(dist.log_sigma[i], kLogSigmaMin, kLogSigmaMax);
    const double u = dist.mu[i] + std::exp(log_sigma) * eps[i];
    out.pre_squash[i] = u;
    out.action[i] = a_max * std::tanh(u);
    // log N(u; mu, sigma) with (u - mu) / sigma == eps.
    const double log_normal = -0.5 * eps[i] * eps[i] - log_sigma - kHalfLog2Pi;
    out.log_prob += log_normal - log1m_tanh_sq(u) - log_a_max;
  }
  return out;
}

std::vector<double> deterministic_action(const PolicyDist& dist, double a_max) {
  std::vector<double> a(dist.mu.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a_max * std::tanh(dist.mu[i]);
  return a;
}

DistGradient squashed_sample_grad(const PolicyDist& dist, std::span<const double> eps,
                                  double a_max, std::span<const double> d_action,
                                  double d_log_prob) {
  const std::size_t d = dist.mu.size();
  check_len(eps.size(), d, "noise");
  check_len(d_action.size(), d, "action gradient");
  DistGradient g{std::vector<double>(d), std::vector<double>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    const double sigma = std::exp(dist.log_sigma[i]);
    const double t = std::tanh(dist.mu[i] + sigma * eps[i]);
    // d action / du = a_max (1 - t^2); d log_prob / du = 2 t.
    const double d_u = d_action[i] * a_max * (1.0 - t * t) + d_log_prob * 2.0 * t;
    g.d_mu[i] = d_u;
    g.d_log_sigma[i] = d_u * sigma * eps[i] - d_log_prob;
  }
  return g;
}

std::vector<double> log_prob_grad(const Policy& policy, std::span<const double> s,
                                  std::span<const double> eps, double a_max,
                                  double upstream) {
  const PolicyForward fwd = policy_forward(policy, s);
  const std::vector<double> no_action(policy.action_dim(), 0.0);
  const DistGradient g = squashed_sample_grad(fwd.dist, eps, a_max, no_action, upstream);
  std::vector<double> grad(policy.param_count(), 0.0);
  policy_backward(policy, fwd.tape, g.d_mu, g.d_log_sigma, grad);
  return grad;
}

}  // namespace qsac
