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

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "qsac/policy.hpp"
#include "qsac/qstate.hpp"
#include "qsac/replay.hpp"
#include "qsac/sac.hpp"
#include "qsac/vqc.hpp"

namespace qsac {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-kPi, kPi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

void BM_RxKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s = init_zero(n);
  std::vector<Complex> amps(s.amplitudes().begin(), s.amplitudes().end());
  const auto h = kernels::HalfAngle::of(0.37);
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) kernels::rx(amps, n, q, h);
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RxKernel)->Arg(3)->Arg(8)->Arg(12);

void BM_CnotKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector s = init_zero(n);
  std::vector<Complex> amps(s.amplitudes().begin(), s.amplitudes().end());
  for (auto _ : state) {
    for (int q = 0; q < n; ++q) kernels::cnot(amps, n, q, (q + 1) % n);
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_CnotKernel)->Arg(3)->Arg(8)->Arg(12);

void BM_VqcForward(benchmark::State& state) {
  const VqcArch arch{static_cast<VqcKind>(state.range(0)), 3, static_cast<int>(state.range(1))};
  std::mt19937_64 rng(1);
  const VqcParams p = make_params(arch, uniform(count_params(arch), rng));
  const std::vector<double> s = uniform(3, rng);
  for (auto _ : state) benchmark::DoNotOptimize(forward(p, s));
}
BENCHMARK(BM_VqcForward)
    ->ArgNames({"reupload", "layers"})
    ->ArgsProduct({{0, 1}, {1, 2, 4, 8}});

template <bool Adjoint>
void BM_VqcGradient(benchmark::State& state) {
  const VqcArch arch{static_cast<VqcKind>(state.range(0)), 3, static_cast<int>(state.range(1))};
  std::mt19937_64 rng(2);
  const VqcParams p = make_params(arch, uniform(count_params(arch), rng));
  const std::vector<double> s = uniform(3, rng);
  const std::vector<double> up = {0.3, -0.7, 0.1};
  for (auto _ : state) {
    if constexpr (Adjoint) {
      benchmark::DoNotOptimize(grad_adjoint(p, s, up));
    } else {
      benchmark::DoNotOptimize(grad_parameter_shift(p, s, up));
    }
  }
}
BENCHMARK(BM_VqcGradient<true>)
    ->Name("BM_VqcGradientAdjoint")
    ->ArgNames({"reupload", "layers"})
    ->ArgsProduct({{0, 1}, {1, 2, 4, 8}});
BENCHMARK(BM_VqcGradient<false>)
    ->Name("BM_VqcGradientShift")
    ->ArgNames({"reupload", "layers"})
    ->ArgsProduct({{0, 1}, {1, 2, 4, 8}});

void BM_SacUpdate(benchmark::State& state) {
  AgentConfig config;
  config.policy_kind = static_cast<PolicyKind>(state.range(0));
  config.n_layers = static_cast<int>(state.range(1));
  AgentState agent(config, 3);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  for (int i = 0; i < 2000; ++i) {
    Transition t;
    for (int k = 0; k < 3; ++k) {
      t.s[k] = z(rng);
      t.s_next[k] = z(rng);
    }
    t.a = z(rng);
    t.r = -std::abs(z(rng));
    agent.replay.push(t);
  }
  for (auto _ : state) update(agent);
}
BENCHMARK(BM_SacUpdate)
    ->ArgNames({"kind", "layers"})
    ->Args({0, 2})
    ->Args({1, 1})
    ->Args({1, 2})
    ->Args({1, 8})
    ->Args({2, 2})
    ->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace qsac

BENCHMARK_MAIN();
