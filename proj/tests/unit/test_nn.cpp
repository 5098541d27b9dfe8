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

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "qsac/nn.hpp"
#include "test_util.hpp"

namespace qsac::nn {
namespace {

DenseNet random_mlp(std::size_t in, std::vector<std::size_t> hidden, std::size_t out,
                    std::uint64_t seed) {
  DenseNet net = DenseNet::mlp(in, hidden, out);
  std::mt19937_64 rng(seed);
  net.init_uniform(rng);
  return net;
}

TEST(DenseNet, ParamCounts) {
  const std::size_t hidden[] = {32, 32};
  EXPECT_EQ(DenseNet::mlp(3, hidden, 2).param_count(), 1250U);
  EXPECT_EQ(DenseNet::mlp(4, hidden, 1).param_count(), 1249U);
  EXPECT_EQ(DenseNet({{3, 2, Activation::Identity}}).param_count(), 8U);
}

TEST(DenseNet, RejectsMismatchedLayers) {
  EXPECT_THROW(DenseNet({{3, 4, Activation::ReLU}, {5, 1, Activation::Identity}}),
               std::invalid_argument);
  EXPECT_THROW(DenseNet(std::vector<LayerShape>{}), std::invalid_argument);
  const DenseNet net({{3, 2, Activation::Identity}});
  const std::vector<double> x = {1.0, 2.0};
  EXPECT_THROW(forward(net, x), std::invalid_argument);
}

TEST(DenseNet, InitWithinFanInBound) {
  const DenseNet net = random_mlp(4, {32, 32}, 1, 1);
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(net.layers()[k].in));
    const std::size_t begin = net.weight_offset(k);
    const std::size_t end = begin + net.layers()[k].param_count();
    for (std::size_t i = begin; i < end; ++i) EXPECT_LE(std::abs(net.params()[i]), bound);
  }
}

TEST(Forward, ZeroWeightsGiveBias) {
  const std::size_t hidden[] = {5};
  DenseNet net = DenseNet::mlp(3, hidden, 2);
  net.params()[net.bias_offset(1)] = 0.25;
  net.params()[net.bias_offset(1) + 1] = -1.5;
  const std::vector<double> x = {3.0, -2.0, 7.0};
  EXPECT_EQ(predict(net, x), (std::vector<double>{0.25, -1.5}));
}

TEST(Forward, IdentityLayer) {
  DenseNet net({{3, 3, Activation::Identity}});
  for (std::size_t i = 0; i < 3; ++i) net.params()[i * 3 + i] = 1.0;
  const std::vector<double> x = {0.5, -4.0, 2.0};
  EXPECT_EQ(forward(net, x).y, x);
}

TEST(Forward, PredictMatchesForward) {
  const DenseNet net = random_mlp(4, {32, 32}, 1, 2);
  const std::vector<double> x = {0.1, -0.7, 0.3, 1.9};
  EXPECT_EQ(predict(net, x), forward(net, x).y);
}

TEST(Backward, ZeroUpstream) {
  const DenseNet net = random_mlp(3, {32, 32}, 2, 3);
  const std::vector<double> x = {0.4, 0.5, -0.6};
  const std::vector<double> up = {0.0, 0.0};
  const Gradients g = backward(net, forward(net, x).tape, up);
  for (double v : g.params) EXPECT_EQ(v, 0.0);
  for (double v : g.input) EXPECT_EQ(v, 0.0);
}

TEST(Backward, IdentityInputGradIsTransposeProduct) {
  std::mt19937_64 rng(4);
  DenseNet net({{3, 2, Activation::Identity}});
  net.init_uniform(rng);
  const std::vector<double> x = {1.0, 2.0, 3.0};
  const std::vector<double> up = {0.7, -1.1};
  const Gradients g = backward(net, forward(net, x).tape, up);
  const auto w = net.params();
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(g.input[i], w[0 * 3 + i] * up[0] + w[1 * 3 + i] * up[1], 1e-15);
  }
}

TEST(Backward, ReluBlocksNegativeUnits) {
  DenseNet net({{1, 2, Activation::ReLU}, {2, 1, Activation::Identity}});
  auto p = net.params();
  p[0] = 1.0;   // unit 0 weight
  p[1] = -1.0;  // unit 1 weight
  p[4] = 1.0;   // output weight from unit 0
  p[5] = 1.0;   // output weight from unit 1
  const std::vector<double> x = {2.0};
  const std::vector<double> up = {1.0};
  const Gradients g = backward(net, forward(net, x).tape, up);
  EXPECT_EQ(g.params[1], 0.0);  // unit 1 pre-activation is -2
  EXPECT_EQ(g.params[3], 0.0);
  EXPECT_EQ(g.params[0], 2.0);
  EXPECT_EQ(g.input[0], 1.0);
}

class FiniteDifference
    : public ::testing::TestWithParam<std::tuple<std::size_t, std::size_t, bool>> {};

TEST_P(FiniteDifference, ParamsAndInputs) {
  const auto [in, out, hidden] = GetParam();
  const DenseNet net = hidden ? random_mlp(in, {32, 32}, out, 5)
                              : random_mlp(in, {}, out, 5);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<double> x = testing::uniform_vector(in, -2, 2, rng);
    const std::vector<double> up = testing::uniform_vector(out, -1, 1, rng);
    const Gradients g = backward(net, forward(net, x).tape, up);

    auto dot = [&](std::span<const double> y) {
      double total = 0.0;
      for (std::size_t j = 0; j < y.size(); ++j) total += up[j] * y[j];
      return total;
    };
    const std::vector<double> fd_params = testing::finite_difference(
        [&](std::span<const double> theta) {
          DenseNet copy = net;
          std::copy(theta.begin(), theta.end(), copy.params().begin());
          return dot(predict(copy, x));
        },
        std::vector<double>(net.params().begin(), net.params().end()));
    const std::vector<double> fd_input = testing::finite_difference(
        [&](std::span<const double> xx) { return dot(predict(net, xx)); }, x);
    for (std::size_t i = 0; i < fd_params.size(); ++i) {
      ASSERT_TRUE(testing::close_rel(g.params[i], fd_params[i], 1e-4)) << "param " << i;
    }
    for (std::size_t i = 0; i < in; ++i) {
      ASSERT_TRUE(testing::close_rel(g.input[i], fd_input[i], 1e-4)) << "input " << i;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, FiniteDifference,
                         ::testing::Values(std::make_tuple(4, 1, true),
                                           std::make_tuple(3, 1, true),
                                           std::make_tuple(3, 2, true),
                                           std::make_tuple(3, 2, false)));

TEST(BackwardInto, Accumulates) {
  const DenseNet net = random_mlp(3, {8}, 1, 7);
  const std::vector<double> x = {0.3, 0.1, -0.2};
  const std::vector<double> up = {1.0};
  const Tape tape = forward(net, x).tape;
  std::vector<double> acc(net.param_count(), 0.0);
  backward_into(net, tape, up, acc);
  backward_into(net, tape, up, acc);
  const Gradients once = backward(net, tape, up);
  for (std::size_t i = 0; i < acc.size(); ++i) EXPECT_DOUBLE_EQ(acc[i], 2 * once.params[i]);
}

TEST(Adam, ZeroGradientLeavesParams) {
  AdamState st(3, 0.01);
  std::vector<double> p = {1.0, -2.0, 3.0};
  const std::vector<double> g = {0.0, 0.0, 0.0};
  adam_step(st, p, g);
  EXPECT_EQ(p, (std::vector<double>{1.0, -2.0, 3.0}));
}

TEST(Adam, FirstStepIsSignedStepSize) {
  const double lr = 3e-3;
  AdamState st(4, lr);
  std::vector<double> p = {0.0, 0.0, 0.0, 0.0};
  const std::vector<double> g = {5.0, -0.2, 1e-3, -40.0};
  adam_step(st, p, g);
  for (std::size_t i = 0; i < 4; ++i) {
    // m_hat = g, v_hat = g^2, so the step is lr * g / (|g| + eps).
    const double want = -lr * g[i] / (std::abs(g[i]) + 1e-8);
    EXPECT_NEAR(p[i], want, 1e-15);
    EXPECT_NEAR(std::abs(p[i]), lr, lr * 1e-4);
  }
}

TEST(Adam, TwoStepTrace) {
  const double lr = 0.1, b1 = 0.9, b2 = 0.999, eps = 1e-8, g = 0.5;
  AdamState st(1, lr, b1, b2, eps);
  std::vector<double> p = {1.0};
  const std::vector<double> grad = {g};
  adam_step(st, p, grad);
  adam_step(st, p, grad);
  const double m2 = (1 - b1) * g * b1 + (1 - b1) * g;
  const double v2 = (1 - b2) * g * g * b2 + (1 - b2) * g * g;
  EXPECT_NEAR(st.m[0], m2, 1e-15);
  EXPECT_NEAR(st.v[0], v2, 1e-15);
  EXPECT_EQ(st.t, 2);
  const double m1_hat = g, v1_hat = g * g;
  const double m2_hat = m2 / (1 - b1 * b1), v2_hat = v2 / (1 - b2 * b2);
  const double want = 1.0 - lr * m1_hat / (std::sqrt(v1_hat) + eps) -
                      lr * m2_hat / (std::sqrt(v2_hat) + eps);
  EXPECT_NEAR(p[0], want, 1e-14);
}

TEST(Adam, RejectsLengthMismatch) {
  AdamState st(2);
  std::vector<double> p = {0.0, 0.0};
  const std::vector<double> g = {1.0};
  EXPECT_THROW(adam_step(st, p, g), std::invalid_argument);
}

TEST(Polyak, Examples) {
  std::vector<double> target = {1.0, 2.0};
  const std::vector<double> online = {0.0, 5.0};
  polyak_update(target, online, 1.0);
  EXPECT_EQ(target, (std::vector<double>{1.0, 2.0}));
  polyak_update(target, online, 0.0);
  EXPECT_EQ(target, online);

  std::vector<double> t = {1.0};
  const std::vector<double> o = {0.0};
  polyak_update(t, o, 0.995);
  EXPECT_DOUBLE_EQ(t[0], 0.995);
  EXPECT_THROW(polyak_update(t, o, 1.5), std::invalid_argument);
}

}  // namespace
}  // namespace qsac::nn
