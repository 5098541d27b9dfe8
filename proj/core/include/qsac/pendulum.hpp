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

#include <array>
#include <random>

namespace qsac::pendulum {

inline constexpr double kGravity = 10.0;
inline constexpr double kMass = 1.0;
inline constexpr double kLength = 1.0;
inline constexpr double kDt = 0.05;
inline constexpr double kMaxSpeed = 8.0;
inline constexpr double kMaxTorque = 2.0;
inline constexpr int kEpisodeLength = 200;
inline constexpr int kStateDim = 3;

/// (cos theta, sin theta, theta_dot).
using Observation = std::array<double, kStateDim>;

/// theta = 0 is upright. theta is not wrapped; only the reward wraps it.
struct PendulumState {
  double theta = 0.0;
  double theta_dot = 0.0;
  int step_count = 0;
};

struct StepResult {
  PendulumState next;
  Observation obs;
  double reward = 0.0;
  bool done = false;
};

/// theta ~ U[-pi, pi], theta_dot ~ U[-1, 1].
PendulumState reset(std::mt19937_64& rng);

/// Torque is clamped to [-2, 2]. The reward is computed from the state
/// before the transition. Throws std::logic_error on a finished episode.
StepResult step(const PendulumState& state, double action);

Observation observe(const PendulumState& state);

/// Maps an angle into (-pi, pi].
double wrap_angle(double theta);

}  // namespace qsac::pendulum
