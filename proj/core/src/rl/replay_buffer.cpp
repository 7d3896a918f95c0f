#include "navrl/rl/replay_buffer.hpp"

#include <algorithm>

#include "navrl/errors.hpp"

namespace navrl::rl {

ReplayBuffer::ReplayBuffer(std::size_t capacity, std::uint64_t seed)
    : capacity_(capacity), rng_(seed) {
  if (capacity_ == 0) throw ConfigError("replay capacity must be >= 1");
}

void ReplayBuffer::push(Transition t) {
  ++pushed_;
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
    return;
  }
  items_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= items_.size()) throw ContractViolation("ReplayBuffer::at: index out of range");
  return items_[(head_ + i) % items_.size()];
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t batch) {
  if (batch > items_.size())
    throw ContractViolation("ReplayBuffer::sample: batch larger than buffer");
  // Floyd's algorithm: distinct indices with exactly `batch` draws.
  const std::size_t n = items_.size();
  std::vector<std::size_t> chosen;
  chosen.reserve(batch);
  for (std::size_t j = n - batch; j < n; ++j) {
    const auto t = static_cast<std::size_t>(uniform_index(rng_, j + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
      chosen.push_back(t);
    else
      chosen.push_back(j);
  }
  std::vector<const Transition*> out;
  out.reserve(batch);
  for (std::size_t idx : chosen) out.push_back(&items_[idx]);
  return out;
}

}  // namespace navrl::rl
