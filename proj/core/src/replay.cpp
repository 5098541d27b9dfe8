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

#include "qsac/replay.hpp"

#include <stdexcept>
#include <string>

namespace qsac {

ReplayBuffer::ReplayBuffer(std::size_t capacity) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
  ring_.resize(capacity);
}

void ReplayBuffer::push(const Transition& t) {
  if (t.d != 0 && t.d != 1) throw std::invalid_argument("done flag must be 0 or 1");
  ring_[cursor_] = t;
  cursor_ = (cursor_ + 1) % ring_.size();
  if (size_ < ring_.size()) ++size_;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t batch_size,
                                             std::mt19937_64& rng) const {
  if (batch_size == 0) throw std::invalid_argument("batch size must be positive");
  if (size_ < batch_size) {
    throw std::length_error("replay holds " + std::to_string(size_) +
                            " transitions, batch needs " + std::to_string(batch_size));
  }
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  std::vector<Transition> batch;
  batch.reserve(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) batch.push_back(ring_[pick(rng)]);
  return batch;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("replay index out of range");
  const std::size_t oldest = size_ < ring_.size() ? 0 : cursor_;
  return ring_[(oldest + i) % ring_.size()];
}

}  // namespace qsac
