#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "navrl/random.hpp"

namespace navrl::rl {

struct SkipPolicy {
  /// Re-decide greedily only when t mod action_skip == 0 (1 disables skipping).
  int action_skip = 1;
  /// false: exploration is tried every step and may break a held action.
  /// true: exploration is only tried where a fresh decision is due.
  bool skip_gates_exploration = false;
};

/// Epsilon-greedy with action skipping. t is the 1-based step within the episode;
/// step 1 (or a missing prev_action) always decides fresh. Greedy ties go to the
/// lowest index. Always consumes one uniform draw, plus one more when exploring.
int select_action(std::span<const double> q_values, std::size_t t, double epsilon,
                  std::optional<int> prev_action, const SkipPolicy& policy, Rng& rng);

/// max(epsilon_min, epsilon_start * decay^episode), episode counted from 0.
double epsilon_for_episode(double epsilon_start, double decay, double epsilon_min,
                           std::size_t episode);

}  // namespace navrl::rl
