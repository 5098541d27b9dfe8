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
#include <numbers>
#include <random>
#include <vector>

#include "qsac/qstate.hpp"
#include "qsac/vqc.hpp"
#include "test_util.hpp"

namespace qsac {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> oracle_expectations(const VqcParams& p, std::span<const double> s) {
  const int n = arch_of(p).n_qubits;
  const std::vector<GateOp> ops = to_gate_ops(p, s);
  const StateVector psi(matvec(circuit_unitary(ops, n), init_zero(n).amplitudes()));
  std::vector<double> out(n);
  for (int q = 0; q < n; ++q) out[q] = expect_z(psi, q);
  return out;
}

VqcParams random_params(const VqcArch& arch, std::mt19937_64& rng) {
  return make_params(arch, testing::uniform_vector(count_params(arch), -kPi, kPi, rng));
}

TEST(Counts, ClosedForms) {
  EXPECT_EQ(count_params({VqcKind::Reuploading, 3, 2}), 33U);
  EXPECT_EQ(count_params({VqcKind::Vanilla, 3, 1}), 9U);
  EXPECT_EQ(count_params({VqcKind::Vanilla, 3, 8}), 72U);
  for (int l : {1, 2, 4, 8}) {
    EXPECT_EQ(count_params({VqcKind::Vanilla, 3, l}), 9U * l);
    EXPECT_EQ(count_params({VqcKind::Reuploading, 3, l}), static_cast<std::size_t>(l * 12 + 9));
  }
}

TEST(Params, ValidateShapes) {
  EXPECT_THROW(VanillaVqcParams(3, 0), std::invalid_argument);
  EXPECT_THROW(make_params({VqcKind::Vanilla, 3, 2}, std::vector<double>(17)),
               std::invalid_argument);
  std::mt19937_64 rng(1);
  const VqcParams p = init_params({VqcKind::Reuploading, 3, 2}, rng);
  const auto& r = std::get<ReuploadVqcParams>(p);
  for (int l = 0; l < 2; ++l) {
    for (int q = 0; q < 3; ++q) EXPECT_EQ(r.lambda(l, q), 1.0);
  }
  EXPECT_EQ(flat_of(p).size(), 33U);
}

TEST(Vanilla, Examples) {
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  const VanillaVqcParams p(3, 2);
  EXPECT_EQ(forward_vanilla(p, zero), (std::vector<double>{1.0, 1.0, 1.0}));

  // |000> -> |100> -> ring 0->1, 1->2, 2->0 -> |110> -> |111> -> |011>.
  const VanillaVqcParams one(3, 1);
  const std::vector<double> s = {kPi, 0.0, 0.0};
  const std::vector<double> z = forward_vanilla(one, s);
  EXPECT_NEAR(z[0], 1.0, 1e-12);
  EXPECT_NEAR(z[1], -1.0, 1e-12);
  EXPECT_NEAR(z[2], -1.0, 1e-12);
}

TEST(Reuploading, Examples) {
  const ReuploadVqcParams p(3, 2);  // all angles 0, all lambda 0
  std::mt19937_64 rng(2);
  const std::vector<double> s = testing::uniform_vector(3, -3, 3, rng);
  EXPECT_EQ(forward_reuploading(p, s), (std::vector<double>{1.0, 1.0, 1.0}));

  // s = 0 removes the encoders: compare with the oracle built without them.
  ReuploadVqcParams r(3, 2);
  for (double& v : r.flat()) v = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
  const std::vector<double> zeros = {0.0, 0.0, 0.0};
  std::vector<GateOp> ops = to_gate_ops(VqcParams(r), zeros);
  std::erase_if(ops, [](const GateOp& g) { return g.kind == GateKind::RX; });
  const StateVector psi = apply_circuit(init_zero(3), ops);
  const std::vector<double> got = forward_reuploading(r, zeros);
  for (int q = 0; q < 3; ++q) EXPECT_NEAR(got[q], expect_z(psi, q), 1e-12);
}

TEST(Forward, MatchesDenseOracle) {
  std::mt19937_64 rng(3);
  for (VqcKind kind : {VqcKind::Vanilla, VqcKind::Reuploading}) {
    for (int l : {1, 2, 4}) {
      for (int trial = 0; trial < 10; ++trial) {
        const VqcParams p = random_params({kind, 3, l}, rng);
        const std::vector<double> s = testing::uniform_vector(3, -kPi, kPi, rng);
        const std::vector<double> got = forward(p, s);
        const std::vector<double> want = oracle_expectations(p, s);
        for (int q = 0; q < 3; ++q) ASSERT_NEAR(got[q], want[q], 1e-10);
      }
    }
  }
}

TEST(Forward, PeriodicInVariationalAngles) {
  std::mt19937_64 rng(4);
  const VqcParams p = random_params({VqcKind::Vanilla, 3, 2}, rng);
  std::vector<double> shifted(flat_of(p).begin(), flat_of(p).end());
  shifted[4] += 2 * kPi;
  const std::vector<double> s = {0.3, -0.2, 0.9};
  const std::vector<double> a = forward(p, s);
  const std::vector<double> b = forward(make_params({VqcKind::Vanilla, 3, 2}, shifted), s);
  for (int q = 0; q < 3; ++q) EXPECT_NEAR(a[q], b[q], 1e-12);
}

TEST(Forward, OutputsBounded) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const VqcParams p = random_params({VqcKind::Reuploading, 3, 2}, rng);
    for (double z : forward(p, testing::uniform_vector(3, -10, 10, rng))) {
      EXPECT_LE(std::abs(z), 1.0 + 1e-12);
    }
  }
}

TEST(Gradient, SingleRxAnalytic) {
  // One qubit, s = 0, only beta set: the circuit is RY(theta) on |0>.
  const std::vector<double> upstream = {1.0};
  for (double theta : {0.0, kPi / 2}) {
    VanillaVqcParams p(1, 1);
    p.angle(0, 0, 1) = theta;
    const std::vector<double> s = {0.0};
    const VqcGradient ps = grad_parameter_shift(VqcParams(p), s, upstream);
    const VqcGradient adj = grad_adjoint(VqcParams(p), s, upstream);
    EXPECT_NEAR(ps[1], -std::sin(theta), 1e-12);
    EXPECT_NEAR(adj[1], -std::sin(theta), 1e-12);
  }
}

TEST(Gradient, ReuploadRxAnalytic) {
  // Re-uploading, one qubit, one layer, zero angles: <Z> = cos(lambda s).
  ReuploadVqcParams p(1, 1);
  p.lambda(0, 0) = 1.0;
  const std::vector<double> s = {kPi / 2};
  const std::vector<double> upstream = {1.0};
  const VqcGradient ps = grad_parameter_shift(VqcParams(p), s, upstream);
  const VqcGradient adj = grad_adjoint(VqcParams(p), s, upstream);
  const std::size_t li = p.lambda_index(0, 0);
  EXPECT_NEAR(ps[li], -s[0] * std::sin(s[0]), 1e-12);
  EXPECT_NEAR(adj[li], -s[0] * std::sin(s[0]), 1e-12);
}

TEST(Gradient, ZeroUpstreamGivesZero) {
  std::mt19937_64 rng(6);
  const VqcParams p = random_params({VqcKind::Reuploading, 3, 2}, rng);
  const std::vector<double> s = {0.1, 0.2, 0.3};
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  for (double g : grad_adjoint(p, s, zero)) EXPECT_EQ(g, 0.0);
  for (double g : grad_parameter_shift(p, s, zero)) EXPECT_EQ(g, 0.0);
}

TEST(Gradient, RejectsWrongUpstreamLength) {
  const VqcParams p = VanillaVqcParams(3, 1);
  const std::vector<double> s = {0.0, 0.0, 0.0};
  const std::vector<double> bad = {1.0};
  EXPECT_THROW(grad_adjoint(p, s, bad), std::invalid_argument);
  EXPECT_THROW(grad_parameter_shift(p, s, bad), std::invalid_argument);
}

class GradientAgreement : public ::testing::TestWithParam<std::tuple<VqcKind, int>> {};

TEST_P(GradientAgreement, ShiftAdjointAndFiniteDifferences) {
  const auto [kind, layers] = GetParam();
  const VqcArch arch{kind, 3, layers};
  std::mt19937_64 rng(100 + layers + 10 * static_cast<int>(kind));
  for (int trial = 0; trial < 25; ++trial) {
    const VqcParams p = random_params(arch, rng);
    const std::vector<double> s = testing::uniform_vector(3, -kPi, kPi, rng);
    const std::vector<double> up = testing::uniform_vector(3, -1, 1, rng);
    const VqcGradient ps = grad_parameter_shift(p, s, up);
    const VqcGradient adj = grad_adjoint(p, s, up);
    auto loss = [&](std::span<const double> flat) {
      const std::vector<double> z =
          forward(make_params(arch, std::vector<double>(flat.begin(), flat.end())), s);
      return up[0] * z[0] + up[1] * z[1] + up[2] * z[2];
    };
    const std::vector<double> fd = testing::finite_difference(
        loss, std::vector<double>(flat_of(p).begin(), flat_of(p).end()));
    ASSERT_EQ(ps.size(), count_params(arch));
    for (std::size_t i = 0; i < ps.size(); ++i) {
      ASSERT_NEAR(ps[i], adj[i], 1e-8) << "coordinate " << i;
      ASSERT_NEAR(ps[i], fd[i], 1e-5) << "coordinate " << i;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Architectures, GradientAgreement,
                         ::testing::Combine(::testing::Values(VqcKind::Vanilla,
                                                              VqcKind::Reuploading),
                                            ::testing::Values(1, 2, 4, 8)));

}  // namespace
}  // namespace qsac
