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
#include <variant>
#include <vector>

#include "qsac/nn.hpp"
#include "qsac/vqc.hpp"

namespace qsac {

inline constexpr double kLogSigmaMin = -20.0;
inline constexpr double kLogSigmaMax = 2.0;

/// Pre-squash diagonal Gaussian. log_sigma is already clamped.
struct PolicyDist {
  std::vector<double> mu;
  std::vector<double> log_sigma;
};

struct SquashedSample {
  std::vector<double> action;
  double log_prob = 0.0;
  std::vector<double> pre_squash;
};

enum class CircuitGradient { Adjoint, ParameterShift };

struct ClassicalPolicy {
  nn::DenseNet net;
};

/// Circuit expectations feed a single linear layer that emits
/// (mu, log_sigma). input_scale multiplies the state before encoding.
struct HybridPolicy {
  VqcParams circuit;
  nn::DenseNet head;
  std::vector<double> input_scale;
  CircuitGradient gradient = CircuitGradient::Adjoint;
};

/// Everything policy_backward needs from a forward pass.
struct PolicyTape {
  std::vector<double> circuit_input;
  std::vector<double> raw_output;
  nn::Tape net_tape;
};

class Policy {
 public:
  explicit Policy(ClassicalPolicy p);
  explicit Policy(HybridPolicy p);

  /// MLP state_dim -> hidden... -> 2 * action_dim.
  static Policy classical(std::size_t state_dim, std::size_t action_dim,
                          std::span<const std::size_t> hidden, std::mt19937_64& rng);
  static Policy hybrid(const VqcArch& arch, std::size_t action_dim,
                       std::vector<double> input_scale, std::mt19937_64& rng);

  std::size_t state_dim() const { return state_dim_; }
  std::size_t action_dim() const { return action_dim_; }
  std::size_t param_count() const;
  bool is_hybrid() const { return std::holds_alternative<HybridPolicy>(impl_); }

  const ClassicalPolicy& as_classical() const { return std::get<ClassicalPolicy>(impl_); }
  const HybridPolicy& as_hybrid() const { return std::get<HybridPolicy>(impl_); }
  ClassicalPolicy& as_classical() { return std::get<ClassicalPolicy>(impl_); }
  HybridPolicy& as_hybrid() { return std::get<HybridPolicy>(impl_); }

  /// Flat layout: hybrid = [circuit params, head params]; classical = MLP.
  std::vector<double> flat_params() const;
  void set_flat_params(std::span<const double> flat);

 private:
  std::variant<ClassicalPolicy, HybridPolicy> impl_;
  std::size_t state_dim_ = 0;
  std::size_t action_dim_ = 0;
};

struct PolicyForward {
  PolicyDist dist;
  PolicyTape tape;
};

PolicyForward policy_forward(const Policy& policy, std::span<const double> s);

/// Accumulates into grad (length param_count()) the gradient of
/// d_mu . mu + d_log_sigma . log_sigma. Coordinates where log_sigma sat on
/// the clamp receive no gradient.
void policy_backward(const Policy& policy, const PolicyTape& tape,
                     std::span<const double> d_mu, std::span<const double> d_log_sigma,
                     std::span<double> grad);

/// u = mu + sigma * eps, action = a_max * tanh(u), with the tanh Jacobian
/// correction folded into log_prob.
SquashedSample sample_squashed(const PolicyDist& dist, std::span<const double> eps,
                               double a_max);

/// a_max * tanh(mu); no noise.
std::vector<double> deterministic_action(const PolicyDist& dist, double a_max);

struct DistGradient {
  std::vector<double> d_mu;
  std::vector<double> d_log_sigma;
};

/// Pathwise gradient of d_action . action + d_log_prob * log_prob with
/// respect to (mu, log_sigma), holding eps fixed.
DistGradient squashed_sample_grad(const PolicyDist& dist, std::span<const double> eps,
                                  double a_max, std::span<const double> d_action,
                                  double d_log_prob);

/// d(upstream * log pi(a~|s))/dtheta including the dependence of a~ on theta.
std::vector<double> log_prob_grad(const Policy& policy, std::span<const double> s,
                                  std::span<const double> eps, double a_max,
                                  double upstream);

/// log(1 - tanh(u)^2) without cancellation for large |u|.
double log1m_tanh_sq(double u);

}  // namespace qsac
