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

#include "qsac/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qsac::pendulum {

double wrap_angle(double theta) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::fmod(theta + std::numbers::pi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // r in [0, 2pi) maps to [-pi, pi); fold -pi onto +pi.
  double wrapped = r - std::numbers::pi;
  if (wrapped <= -std::numbers::pi) wrapped += kTwoPi;
  return wrapped;
}

PendulumState reset(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> speed(-1.0, 1.0);
  PendulumState s;
  s.theta = angle(rng);
  s.theta_dot = speed(rng);
  return s;
}

Observation observe(const PendulumState& state) {
  return {std::cos(state.theta), std::sin(state.theta), state.theta_dot};
}

StepResult step(const PendulumState& state, double action) {
  if (state.step_count >= kEpisodeLength) {
    throw std::logic_error("cannot step a finished pendulum episode");
  }
  if (std::isnan(action)) throw std::invalid_argument("pendulum torque is NaN");
  const double u = std::clamp(action, -kMaxTorque, kMaxTorque);
  const double th = wrap_angle(state.theta);
  const double reward =
      -(th * th + 0.1 * state.theta_dot * state.theta_dot + 0.001 * u * u);

  const double accel = 3.0 * kGravity / (2.0 * kLength) * std::sin(state.theta) +
                       3.0 / (kMass * kLength * kLength) * u;
  StepResult r;
  r.next.theta_dot = std::clamp(state.theta_dot + accel * kDt, -kMaxSpeed, kMaxSpeed);
  r.next.theta = state.theta + r.next.theta_dot * kDt;
  r.next.step_count = state.step_count + 1;
  r.obs = observe(r.next);
  r.reward = reward;
  r.done = r.next.step_count == kEpisodeLength;
  return r;
}

}  // namespace qsac::pendulum
