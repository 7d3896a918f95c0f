#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "navrl/neural/ndarray.hpp"
#include "navrl/random.hpp"

namespace navrl::rl {

using neural::NdArray;

/// (window, action, reward, next_window, terminal). Windows are (seq_len, obs_dim);
/// next_window is window shifted by one observation.
struct Transition {
  NdArray window;
  int action = 0;
  double reward = 0.0;
  NdArray next_window;
  bool terminal = false;
};

/// Fixed-capacity FIFO with a seeded uniform sampler.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, std::uint64_t seed);

  /// Evicts the oldest transition when full.
  void push(Transition t);

  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t total_pushed() const { return pushed_; }

  /// i-th oldest stored transition.
  const Transition& at(std::size_t i) const;

  /// `batch` distinct transitions drawn uniformly. Throws ContractViolation if batch > size().
  std::vector<const Transition*> sample(std::size_t batch);

  const Rng& rng() const { return rng_; }
  void set_rng(const Rng& rng) { rng_ = rng; }

 private:
  std::size_t capacity_;
  std::vector<Transition> items_;
  std::size_t head_ = 0;  // oldest element once full
  std::uint64_t pushed_ = 0;
  Rng rng_;
};

}  // namespace navrl::rl
