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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qsac/sac.hpp"
#include "test_util.hpp"

namespace qsac {
namespace {

AgentConfig small_config(PolicyKind kind) {
  AgentConfig c;
  c.policy_kind = kind;
  c.total_steps = 600;
  c.warmup_steps = 200;
  return c;
}

std::vector<Transition> random_batch(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> th(-3.1, 3.1), w(-8, 8), a(-2, 2), r(-16, 0);
  std::vector<Transition> batch(n);
  for (Transition& t : batch) {
    const double theta = th(rng), next = th(rng);
    t.s = {std::cos(theta), std::sin(theta), w(rng)};
    t.s_next = {std::cos(next), std::sin(next), w(rng)};
    t.a = a(rng);
    t.r = r(rng);
  }
  return batch;
}

std::vector<double> normals(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (double& x : v) x = z(rng);
  return v;
}

void make_constant(nn::DenseNet& net, double value) {
  std::fill(net.params().begin(), net.params().end(), 0.0);
  net.params()[net.bias_offset(net.layers().size() - 1)] = value;
}

TEST(Config, Validation) {
  AgentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.gamma = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AgentConfig{};
  c.policy_lr = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AgentConfig{};
  c.alpha = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AgentConfig{};
  c.replay_capacity = 8;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(AgentState(c, 0), std::invalid_argument);
}

TEST(Config, KindNames) {
  for (PolicyKind k : {PolicyKind::Classical, PolicyKind::VanillaVqc, PolicyKind::ReuploadingVqc}) {
    EXPECT_EQ(policy_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(policy_kind_from_string("quantum"), std::invalid_argument);
}

TEST(AgentState, TargetsStartEqualToOnline) {
  const AgentState agent(AgentConfig{}, 3);
  EXPECT_TRUE(std::equal(agent.q1.params().begin(), agent.q1.params().end(),
                         agent.q1_target.params().begin()));
  EXPECT_TRUE(std::equal(agent.q2.params().begin(), agent.q2.params().end(),
                         agent.q2_target.params().begin()));
  EXPECT_FALSE(std::equal(agent.q1.params().begin(), agent.q1.params().end(),
                          agent.q2.params().begin()));
  EXPECT_EQ(agent.q1.param_count(), 1249U);
  EXPECT_EQ(agent.policy.param_count(), 1250U);
}

TEST(AgentState, PolicySizes) {
  AgentConfig c;
  c.policy_kind = PolicyKind::ReuploadingVqc;
  EXPECT_EQ(AgentState(c, 0).policy.param_count(), 41U);
  c.policy_kind = PolicyKind::VanillaVqc;
  c.n_layers = 8;
  EXPECT_EQ(AgentState(c, 0).policy.param_count(), 72U + 8U);
}

TEST(Act, WarmupIsUniform) {
  AgentState agent(AgentConfig{}, 4);
  const pendulum::Observation s = {1.0, 0.0, 0.0};
  double lo = 9, hi = -9;
  for (int i = 0; i < 2000; ++i) {
    const double a = act(s, agent);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  EXPECT_GE(lo, -2.0);
  EXPECT_LE(hi, 2.0);
  EXPECT_LT(lo, -1.9);
  EXPECT_GT(hi, 1.9);
}

TEST(Act, AfterWarmupSamplesPolicy) {
  AgentState agent(AgentConfig{}, 5);
  agent.step = agent.config.warmup_steps;
  const pendulum::Observation s = {0.3, 0.95, -1.0};
  std::mt19937_64 shadow = agent.rng;
  const double a = act(s, agent);
  const double eps = std::normal_distribution<double>()(shadow);
  const PolicyDist d = policy_forward(agent.policy, s).dist;
  EXPECT_NEAR(a, 2.0 * std::tanh(d.mu[0] + std::exp(d.log_sigma[0]) * eps), 1e-15);
}

TEST(Act, SeededTrace) {
  AgentState a(AgentConfig{}, 6), b(AgentConfig{}, 6);
  const pendulum::Observation s = {0.0, 1.0, 0.5};
  for (int i = 0; i < 20; ++i) EXPECT_EQ(act(s, a), act(s, b));
}

TEST(Targets, FormulaExamples) {
  EXPECT_NEAR(soft_target(1.0, 0, 0.5, 2.0, 0.2, -1.0), 2.1, 1e-15);
  EXPECT_EQ(soft_target(-3.5, 1, 0.99, 100.0, 0.2, -4.0), -3.5);
  EXPECT_EQ(soft_target(-3.5, 0, 0.0, 100.0, 0.2, -4.0), -3.5);
}

TEST(Targets, StubbedCritics) {
  AgentConfig cfg;
  cfg.gamma = 0.5;
  AgentState agent(cfg, 7);
  make_constant(agent.q1_target, 2.0);
  make_constant(agent.q2_target, 3.0);
  std::mt19937_64 rng(8);
  std::vector<Transition> batch = random_batch(8, rng);
  batch[3].d = 1;
  const std::vector<double> eps = normals(8, rng);
  const std::vector<double> y = compute_targets(batch, agent, eps);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const PolicyDist d = policy_forward(agent.policy, batch[i].s_next).dist;
    const double lp = sample_squashed(d, std::span(&eps[i], 1), 2.0).log_prob;
    const double want = batch[i].d ? batch[i].r : batch[i].r + 0.5 * (2.0 - 0.2 * lp);
    EXPECT_NEAR(y[i], want, 1e-12);
  }
}

TEST(Targets, TwinSymmetry) {
  AgentState agent(AgentConfig{}, 9);
  std::mt19937_64 rng(10);
  const auto batch = random_batch(16, rng);
  const auto eps = normals(16, rng);
  const std::vector<double> before = compute_targets(batch, agent, eps);
  std::swap(agent.q1_target, agent.q2_target);
  EXPECT_EQ(compute_targets(batch, agent, eps), before);
}

TEST(Critic, ZeroLossAtTargets) {
  AgentState agent(AgentConfig{}, 11);
  make_constant(agent.q1, -7.0);
  make_constant(agent.q2, -7.0);
  std::mt19937_64 rng(12);
  const auto batch = random_batch(32, rng);
  const std::vector<double> y(32, -7.0);
  const std::vector<double> p1(agent.q1.params().begin(), agent.q1.params().end());
  const CriticLosses l = update_critics(batch, y, agent);
  EXPECT_EQ(l.loss1, 0.0);
  EXPECT_EQ(l.loss2, 0.0);
  EXPECT_TRUE(std::equal(p1.begin(), p1.end(), agent.q1.params().begin()));
}

TEST(Critic, GradientMatchesFiniteDifferences) {
  const AgentState agent(AgentConfig{}, 13);
  std::mt19937_64 rng(14);
  const auto batch = random_batch(32, rng);
  const std::vector<double> y = testing::uniform_vector(32, -50, 0, rng);
  const LossAndGrad g = critic_loss_grad(agent.q1, batch, y);
  const std::vector<double> fd = testing::finite_difference(
      [&](std::span<const double> theta) {
        nn::DenseNet copy = agent.q1;
        std::copy(theta.begin(), theta.end(), copy.params().begin());
        return critic_loss_grad(copy, batch, y).loss;
      },
      std::vector<double>(agent.q1.params().begin(), agent.q1.params().end()));
  for (std::size_t i = 0; i < fd.size(); ++i) {
    ASSERT_TRUE(testing::close_rel(g.grad[i], fd[i], 1e-4)) << "param " << i;
  }
}

TEST(Critic, DescendsOnFrozenBatch) {
  AgentState agent(AgentConfig{}, 15);
  std::mt19937_64 rng(16);
  const auto batch = random_batch(32, rng);
  const std::vector<double> y = testing::uniform_vector(32, -30, -5, rng);
  double prev = critic_loss_grad(agent.q1, batch, y).loss;
  for (int step = 0; step < 50; ++step) {
    update_critics(batch, y, agent);
    const double loss = critic_loss_grad(agent.q1, batch, y).loss;
    ASSERT_LT(loss, prev) << "step " << step;
    prev = loss;
  }
}

TEST(Actor, NoGradientWithZeroAlphaAndConstantCritics) {
  AgentState agent(AgentConfig{}, 17);
  agent.config.alpha = 0.0;
  make_constant(agent.q1, 4.0);
  make_constant(agent.q2, 5.0);
  std::mt19937_64 rng(18);
  const auto batch = random_batch(16, rng);
  const LossAndGrad g = actor_loss_grad(batch, agent, normals(16, rng));
  for (double v : g.grad) EXPECT_EQ(v, 0.0);
  EXPECT_NEAR(g.loss, -4.0, 1e-12);
}

double actor_objective(const AgentState& agent, const Policy& policy,
                       std::span<const Transition> batch, std::span<const double> eps) {
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const SquashedSample a =
        sample_squashed(policy_forward(policy, batch[i].s).dist, eps.subspan(i, 1), 2.0);
    const std::vector<double> x = {batch[i].s[0], batch[i].s[1], batch[i].s[2], a.action[0]};
    const double q = std::min(nn::predict(agent.q1, x)[0], nn::predict(agent.q2, x)[0]);
    total += agent.config.alpha * a.log_prob - q;
  }
  return total / static_cast<double>(batch.size());
}

class ActorFd : public ::testing::TestWithParam<PolicyKind> {};

TEST_P(ActorFd, GradientMatchesFiniteDifferences) {
  AgentConfig cfg;
  cfg.policy_kind = GetParam();
  const AgentState agent(cfg, 19);
  std::mt19937_64 rng(20);
  const auto batch = random_batch(8, rng);
  const auto eps = normals(8, rng);
  const LossAndGrad g = actor_loss_grad(batch, agent, eps);
  EXPECT_NEAR(g.loss, actor_objective(agent, agent.policy, batch, eps), 1e-12);
  const std::vector<double> fd = testing::finite_difference(
      [&](std::span<const double> theta) {
        Policy copy = agent.policy;
        copy.set_flat_params(theta);
        return actor_objective(agent, copy, batch, eps);
      },
      agent.policy.flat_params());
  ASSERT_EQ(fd.size(), g.grad.size());
  for (std::size_t i = 0; i < fd.size(); ++i) {
    ASSERT_TRUE(testing::close_rel(g.grad[i], fd[i], 1e-4))
        << "param " << i << ": " << g.grad[i] << " vs " << fd[i];
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, ActorFd,
                         ::testing::Values(PolicyKind::Classical, PolicyKind::VanillaVqc,
                                           PolicyKind::ReuploadingVqc));

TEST(Actor, ImprovesOnFrozenBatch) {
  AgentConfig cfg;
  cfg.policy_kind = PolicyKind::ReuploadingVqc;
  AgentState agent(cfg, 21);
  std::mt19937_64 rng(22);
  const auto batch = random_batch(32, rng);
  const auto eps = normals(32, rng);
  const double before = actor_objective(agent, agent.policy, batch, eps);
  for (int step = 0; step < 50; ++step) update_actor(batch, agent, eps);
  EXPECT_LT(actor_objective(agent, agent.policy, batch, eps), before);
}

TEST(Update, NoCrossLeakage) {
  AgentState agent(AgentConfig{}, 23);
  std::mt19937_64 rng(24);
  const auto batch = random_batch(32, rng);
  const auto eps = normals(32, rng);
  const std::vector<double> q1(agent.q1.params().begin(), agent.q1.params().end());
  const std::vector<double> q1t(agent.q1_target.params().begin(), agent.q1_target.params().end());
  update_actor(batch, agent, eps);
  EXPECT_TRUE(std::equal(q1.begin(), q1.end(), agent.q1.params().begin()));

  const std::vector<double> pol = agent.policy.flat_params();
  update_critics(batch, std::vector<double>(32, -1.0), agent);
  EXPECT_EQ(agent.policy.flat_params(), pol);
  EXPECT_TRUE(std::equal(q1t.begin(), q1t.end(), agent.q1_target.params().begin()));

  soft_update_targets(agent);
  for (std::size_t i = 0; i < q1t.size(); ++i) {
    EXPECT_NEAR(agent.q1_target.params()[i], 0.995 * q1t[i] + 0.005 * agent.q1.params()[i],
                1e-15);
  }
}

TEST(Train, DeterministicAndAccounted) {
  for (PolicyKind k : {PolicyKind::Classical, PolicyKind::ReuploadingVqc}) {
    const AgentConfig cfg = small_config(k);
    const auto a = train(cfg, 31);
    const auto b = train(cfg, 31);
    EXPECT_EQ(a, b);
    ASSERT_EQ(a.size(), 3U);
    for (std::size_t e = 0; e < a.size(); ++e) {
      EXPECT_EQ(a[e].episode, static_cast<int>(e));
      EXPECT_EQ(a[e].step, static_cast<long long>((e + 1) * 200));
      EXPECT_LE(a[e].ret, 0.0);
      EXPECT_GE(a[e].ret, -3255.0);
    }
    EXPECT_NE(train(cfg, 32), a);
  }
}

TEST(Train, FullLengthEpisodeCount) {
  AgentConfig cfg;
  cfg.warmup_steps = cfg.total_steps;  // no gradient updates: counts only
  std::vector<EpisodeRecord> seen;
  const auto rec = train(cfg, 0, [&](const EpisodeRecord& r) { seen.push_back(r); });
  EXPECT_EQ(rec.size(), 250U);
  EXPECT_EQ(seen, rec);
  EXPECT_EQ(rec.back().step, 50000);
}

}  // namespace
}  // namespace qsac
