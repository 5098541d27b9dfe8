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

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qsac/nn.hpp"
#include "qsac/pendulum.hpp"
#include "qsac/policy.hpp"
#include "qsac/replay.hpp"

namespace qsac {

enum class PolicyKind { Classical, VanillaVqc, ReuploadingVqc };

std::string to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

struct AgentConfig {
  double gamma = 0.99;
  double alpha = 0.2;
  double rho = 0.995;
  double critic_lr = 3e-3;
  double policy_lr = 3e-3;
  int batch_size = 32;
  int replay_capacity = 10'000;
  long long total_steps = 50'000;
  long long warmup_steps = 1'000;
  int updates_per_step = 1;
  PolicyKind policy_kind = PolicyKind::Classical;
  int n_layers = 2;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  bool operator==(const AgentConfig&) const = default;
};

inline constexpr double kActionBound = pendulum::kMaxTorque;
inline constexpr std::size_t kCriticHidden[] = {32, 32};
inline constexpr std::size_t kPolicyHidden[] = {32, 32};

/// Policy for the pendulum task. The vanilla circuit rescales the angular
/// velocity by pi / 8 so every encoding angle lies in [-pi, pi].
Policy make_policy(PolicyKind kind, int n_layers, std::mt19937_64& rng);

/// Q(s, a) network 4 -> 32 -> 32 -> 1.
nn::DenseNet make_critic(std::mt19937_64& rng);

struct AgentState {
  AgentState(const AgentConfig& config, std::uint64_t seed);

  AgentConfig config;
  std::mt19937_64 rng;
  Policy policy;
  nn::DenseNet q1;
  nn::DenseNet q2;
  nn::DenseNet q1_target;
  nn::DenseNet q2_target;
  nn::AdamState policy_opt;
  nn::AdamState q1_opt;
  nn::AdamState q2_opt;
  ReplayBuffer replay;
  long long step = 0;
};

struct EpisodeRecord {
  int episode = 0;
  long long step = 0;
  double ret = 0.0;
  bool operator==(const EpisodeRecord&) const = default;
};

/// Uniform on [-2, 2] during warmup, then a squashed-Gaussian sample.
double act(const pendulum::Observation& obs, AgentState& agent);

/// r + gamma (1 - d) (min_q - alpha log_pi).
double soft_target(double r, int d, double gamma, double min_q, double alpha, double log_pi);

/// Targets with caller-supplied noise (one value per batch element).
std::vector<double> compute_targets(std::span<const Transition> batch, const AgentState& agent,
                                    std::span<const double> eps);
std::vector<double> compute_targets(std::span<const Transition> batch, AgentState& agent);

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad;
};

/// Mean squared error of one critic against fixed targets.
LossAndGrad critic_loss_grad(const nn::DenseNet& critic, std::span<const Transition> batch,
                             std::span<const double> targets);

struct CriticLosses {
  double loss1 = 0.0;
  double loss2 = 0.0;
};

/// One Adam step per critic. Returns the losses before the step.
CriticLosses update_critics(std::span<const Transition> batch, std::span<const double> targets,
                            AgentState& agent);

/// Batch mean of alpha log pi(a~|s) - min_i Q_i(s, a~), gradient over the
/// policy parameters only.
LossAndGrad actor_loss_grad(std::span<const Transition> batch, const AgentState& agent,
                            std::span<const double> eps);

/// One Adam step on the policy. Returns the loss before the step.
double update_actor(std::span<const Transition> batch, AgentState& agent,
                    std::span<const double> eps);
double update_actor(std::span<const Transition> batch, AgentState& agent);

void soft_update_targets(AgentState& agent);

/// One full gradient update: sample, targets, critics, actor, targets.
void update(AgentState& agent);

using EpisodeCallback = std::function<void(const EpisodeRecord&)>;

/// Runs config.total_steps environment steps and records every episode's
/// undiscounted return.
std::vector<EpisodeRecord> train(const AgentConfig& config, std::uint64_t seed,
                                 const EpisodeCallback& on_episode = {});

}  // namespace qsac
