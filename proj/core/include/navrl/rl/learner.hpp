#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "navrl/neural/optimizer.hpp"
#include "navrl/neural/qnetwork.hpp"
#include "navrl/rl/replay_buffer.hpp"

namespace navrl::rl {

struct AgentConfig {
  double gamma = 0.99;
  std::size_t batch_size = 64;
  std::uint64_t target_update_interval = 2000;  // environment steps between hard syncs
  double epsilon_start = 1.0;
  double epsilon_decay = 0.99;  // per episode
  double epsilon_min = 0.05;
  /// 0 means "use the variant's default".
  int action_skip = 0;
  bool skip_gates_exploration = false;
  std::size_t replay_capacity = 100000;
  std::size_t learning_start = 64;
  std::size_t train_every = 1;
  std::size_t max_episodes = 3000;
  std::size_t max_steps_per_episode = 250;

  void validate() const;
  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

/// Stacks windows into a (batch, seq_len, obs_dim) array.
NdArray stack_windows(std::span<const Transition* const> batch, bool next);

/// y_j = r_j for terminal transitions, else r_j + gamma * max_a Q_target(next_window_j, a).
std::vector<double> compute_targets(std::span<const Transition* const> batch,
                                    const neural::QNetwork& target, double gamma);

/// Mean squared TD error on a uniform minibatch, gradient through the taken action only,
/// one optimizer step. Returns nullopt (no update) while the buffer holds fewer than
/// batch_size transitions. Throws TrainingDivergence on a non-finite loss.
std::optional<double> train_step(neural::QNetwork& online, const neural::QNetwork& target,
                                 ReplayBuffer& buffer, neural::Optimizer& optimizer,
                                 const AgentConfig& config);

/// Loss and gradients for a fixed batch, without touching the optimizer.
struct LossAndGradients {
  double loss = 0.0;
  neural::Gradients gradients;
};
LossAndGradients td_loss(const neural::QNetwork& online, const neural::QNetwork& target,
                         std::span<const Transition* const> batch, double gamma);

/// target <- online, bit for bit.
void sync_target(const neural::QNetwork& online, neural::QNetwork& target);

}  // namespace navrl::rl
