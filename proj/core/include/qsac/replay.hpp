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
#include <vector>

#include "qsac/pendulum.hpp"

namespace qsac {

struct Transition {
  pendulum::Observation s{};
  double a = 0.0;
  double r = 0.0;
  pendulum::Observation s_next{};
  int d = 0;
};

/// Fixed-capacity ring buffer; once full, each push overwrites the oldest
/// entry.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(const Transition& t);

  /// Uniform draws with replacement. Throws std::length_error when fewer
  /// than batch_size transitions are stored.
  std::vector<Transition> sample(std::size_t batch_size, std::mt19937_64& rng) const;

  /// Stored transition in insertion order, 0 = oldest still held.
  const Transition& at(std::size_t i) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return ring_.size(); }

 private:
  std::vector<Transition> ring_;
  std::size_t cursor_ = 0;
  std::size_t size_ = 0;
};

}  // namespace qsac
