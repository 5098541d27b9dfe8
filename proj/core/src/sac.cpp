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

#include "qsac/sac.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qsac {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

std::array<double, 4> critic_input(const pendulum::Observation& s, double a) {
  return {s[0], s[1], s[2], a};
}

void check_batch(std::span<const Transition> batch, std::size_t n, const char* what) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  if (n != batch.size()) {
    throw std::invalid_argument(std::string(what) + " length does not match batch size");
  }
}

}  // namespace

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Classical: return "classical";
    case PolicyKind::VanillaVqc: return "vanilla-vqc";
    case PolicyKind::ReuploadingVqc: return "reuploading-vqc";
  }
  return "unknown";
}

PolicyKind policy_kind_from_string(const std::string& name) {
  if (name == "classical") return PolicyKind::Classical;
  if (name == "vanilla-vqc") return PolicyKind::VanillaVqc;
  if (name == "reuploading-vqc") return PolicyKind::ReuploadingVqc;
  throw std::invalid_argument("unknown policy kind '" + name + "'");
}

void AgentConfig::validate() const {
  auto rate = [](double v, const char* name) {
    if (!(v > 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
  };
  rate(critic_lr, "critic_lr");
  rate(policy_lr, "policy_lr");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("rho must lie in [0, 1]");
  if (batch_size < 1) throw std::invalid_argument("batch_size must be positive");
  if (replay_capacity < batch_size) {
    throw std::invalid_argument("replay_capacity must be at least batch_size");
  }
  if (total_steps < 0) throw std::invalid_argument("total_steps must be non-negative");
  if (warmup_steps < 0) throw std::invalid_argument("warmup_steps must be non-negative");
  if (updates_per_step < 1) throw std::invalid_argument("updates_per_step must be positive");
  if (n_layers < 1) throw std::invalid_argument("n_layers must be positive");
}

Policy make_policy(PolicyKind kind, int n_layers, std::mt19937_64& rng) {
  switch (kind) {
    case PolicyKind::Classical:
      return Policy::classical(pendulum::kStateDim, 1, kPolicyHidden, rng);
    case PolicyKind::VanillaVqc:
      return Policy::hybrid({VqcKind::Vanilla, pendulum::kStateDim, n_layers}, 1,
                            {1.0, 1.0, std::numbers::pi / pendulum::kMaxSpeed}, rng);
    case PolicyKind::ReuploadingVqc:
      return Policy::hybrid({VqcKind::Reuploading, pendulum::kStateDim, n_layers}, 1,
                            {1.0, 1.0, 1.0}, rng);
  }
  throw std::invalid_argument("unknown policy kind");
}

nn::DenseNet make_critic(std::mt19937_64& rng) {
  nn::DenseNet net = nn::DenseNet::mlp(pendulum::kStateDim + 1, kCriticHidden, 1);
  net.init_uniform(rng);
  return net;
}

namespace {

const AgentConfig& validated(const AgentConfig& cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

AgentState::AgentState(const AgentConfig& cfg, std::uint64_t seed)
    : config(validated(cfg)),
      rng(seeded(seed, 0)),
      policy(make_policy(cfg.policy_kind, cfg.n_layers, rng)),
      q1(make_critic(rng)),
      q2(make_critic(rng)),
      q1_target(q1),
      q2_target(q2),
      policy_opt(policy.param_count(), cfg.policy_lr),
      q1_opt(q1.param_count(), cfg.critic_lr),
      q2_opt(q2.param_count(), cfg.critic_lr),
      replay(static_cast<std::size_t>(cfg.replay_capacity)) {}

double act(const pendulum::Observation& obs, AgentState& agent) {
  if (agent.step < agent.config.warmup_steps) {
    std::uniform_real_distribution<double> uniform(-kActionBound, kActionBound);
    return uniform(agent.rng);
  }
  std::normal_distribution<double> normal;
  const double eps = normal(agent.rng);
  const PolicyForward fwd = policy_forward(agent.policy, obs);
  return sample_squashed(fwd.dist, std::span(&eps, 1), kActionBound).action[0];
}

double soft_target(double r, int d, double gamma, double min_q, double alpha, double log_pi) {
  return r + gamma * (1 - d) * (min_q - alpha * log_pi);
}

std::vector<double> compute_targets(std::span<const Transition> batch, const AgentState& agent,
                                    std::span<const double> eps) {
  check_batch(batch, eps.size(), "noise");
  const AgentConfig& cfg = agent.config;
  std::vector<double> y(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Transition& t = batch[i];
    const PolicyForward fwd = policy_forward(agent.policy, t.s_next);
    const SquashedSample a = sample_squashed(fwd.dist, eps.subspan(i, 1), kActionBound);
    const auto x = critic_input(t.s_next, a.action[0]);
    const double q1 = nn::predict(agent.q1_target, x)[0];
    const double q2 = nn::predict(agent.q2_target, x)[0];
    y[i] = soft_target(t.r, t.d, cfg.gamma, std::min(q1, q2), cfg.alpha, a.log_prob);
  }
  return y;
}

std::vector<double> compute_targets(std::span<const Transition> batch, AgentState& agent) {
  std::normal_distribution<double> normal;
  std::vector<double> eps(batch.size());
  for (double& e : eps) e = normal(agent.rng);
  return compute_targets(batch, std::as_const(agent), eps);
}

LossAndGrad critic_loss_grad(const nn::DenseNet& critic, std::span<const Transition> batch,
                             std::span<const double> targets) {
  check_batch(batch, targets.size(), "targets");
  LossAndGrad out;
  out.grad.assign(critic.param_count(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto x = critic_input(batch[i].s, batch[i].a);
    const nn::ForwardResult fwd = nn::forward(critic, x);
    const double err = fwd.y[0] - targets[i];
    out.loss += err * err * inv_n;
    const double upstream = 2.0 * err * inv_n;
    nn::backward_into(critic, fwd.tape, std::span(&upstream, 1), out.grad);
  }
  return out;
}

CriticLosses update_critics(std::span<const Transition> batch, std::span<const double> targets,
                            AgentState& agent) {
  LossAndGrad g1 = critic_loss_grad(agent.q1, batch, targets);
  LossAndGrad g2 = critic_loss_grad(agent.q2, batch, targets);
  nn::adam_step(agent.q1_opt, agent.q1.params(), g1.grad);
  nn::adam_step(agent.q2_opt, agent.q2.params(), g2.grad);
  return {g1.loss, g2.loss};
}

LossAndGrad actor_loss_grad(std::span<const Transition> batch, const AgentState& agent,
                            std::span<const double> eps) {
  check_batch(batch, eps.size(), "noise");
  const double alpha = agent.config.alpha;
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  LossAndGrad out;
  out.grad.assign(agent.policy.param_count(), 0.0);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const PolicyForward fwd = policy_forward(agent.policy, batch[i].s);
    const std::span<const double> e = eps.subspan(i, 1);
    const SquashedSample a = sample_squashed(fwd.dist, e, kActionBound);
    const auto x = critic_input(batch[i].s, a.action[0]);
    nn::ForwardResult f1 = nn::forward(agent.q1, x);
    nn::ForwardResult f2 = nn::forward(agent.q2, x);
    const bool first = f1.y[0] <= f2.y[0];
    const double min_q = first ? f1.y[0] : f2.y[0];
    out.loss += (alpha * a.log_prob - min_q) * inv_n;

    const double one = 1.0;
    const nn::Gradients qg = first ? nn::backward(agent.q1, f1.tape, std::span(&one, 1))
                                   : nn::backward(agent.q2, f2.tape, std::span(&one, 1));
    const double d_action = -qg.input[3] * inv_n;
    const DistGradient dg =
        squashed_sample_grad(fwd.dist, e, kActionBound, std::span(&d_action, 1), alpha * inv_n);
    policy_backward(agent.policy, fwd.tape, dg.d_mu, dg.d_log_sigma, out.grad);
  }
  return out;
}

double update_actor(std::span<const Transition> batch, AgentState& agent,
                    std::span<const double> eps) {
  const LossAndGrad g = actor_loss_grad(batch, agent, eps);
  std::vector<double> params = agent.policy.flat_params();
  nn::adam_step(agent.policy_opt, params, g.grad);
  agent.policy.set_flat_params(params);
  return g.loss;
}

double update_actor(std::span<const Transition> batch, AgentState& agent) {
  std::normal_distribution<double> normal;
  std::vector<double> eps(batch.size());
  for (double& e : eps) e = normal(agent.rng);
  return update_actor(batch, agent, eps);
}

void soft_update_targets(AgentState& agent) {
  nn::polyak_update(agent.q1_target.params(), agent.q1.params(), agent.config.rho);
  nn::polyak_update(agent.q2_target.params(), agent.q2.params(), agent.config.rho);
}

void update(AgentState& agent) {
  const std::vector<Transition> batch =
      agent.replay.sample(static_cast<std::size_t>(agent.config.batch_size), agent.rng);
  const std::vector<double> y = compute_targets(batch, agent);
  update_critics(batch, y, agent);
  update_actor(batch, agent);
  soft_update_targets(agent);
}

std::vector<EpisodeRecord> train(const AgentConfig& config, std::uint64_t seed,
                                 const EpisodeCallback& on_episode) {
  config.validate();
  AgentState agent(config, seed);
  std::mt19937_64 env_rng = seeded(seed, 1);

  std::vector<EpisodeRecord> records;
  records.reserve(static_cast<std::size_t>(config.total_steps / pendulum::kEpisodeLength) + 1);
  pendulum::PendulumState env = pendulum::reset(env_rng);
  pendulum::Observation obs = pendulum::observe(env);
  double episode_return = 0.0;

  for (long long t = 0; t < config.total_steps; ++t) {
    const double a = act(obs, agent);
    const pendulum::StepResult r = pendulum::step(env, a);
    // The 200-step cutoff is a time limit, so the stored transition keeps
    // bootstrapping (d = 0).
    agent.replay.push({obs, std::clamp(a, -kActionBound, kActionBound), r.reward, r.obs, 0});
    episode_return += r.reward;
    env = r.next;
    obs = r.obs;
    agent.step = t + 1;

    if (r.done) {
      EpisodeRecord rec{static_cast<int>(records.size()), t + 1, episode_return};
      records.push_back(rec);
      if (on_episode) on_episode(rec);
      env = pendulum::reset(env_rng);
      obs = pendulum::observe(env);
      episode_return = 0.0;
    }

    if (t >= config.warmup_steps &&
        agent.replay.size() >= static_cast<std::size_t>(config.batch_size)) {
      for (int u = 0; u < config.updates_per_step; ++u) update(agent);
    }
  }
  return records;
}

}  // namespace qsac
