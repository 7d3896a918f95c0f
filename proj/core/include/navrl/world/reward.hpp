#pragma once

#include <cstdint>
#include <string_view>

namespace navrl::world {

enum class StepStatus : std::uint8_t { Running, GoalReached, Collision, Timeout };

std::string_view to_string(StepStatus s);

enum class RewardMode : std::uint8_t {
  Literal,   // R = R_theta * R_d with R_d = 2 * D_c / D_g
  Progress,  // R = progress_scale * (D_prev - D_c)
};

struct RewardConfig {
  RewardMode mode = RewardMode::Literal;
  double collision_penalty = -100.0;
  double goal_reward = 200.0;
  double progress_scale = 100.0;  // per metre of progress, Progress mode only
  friend bool operator==(const RewardConfig&, const RewardConfig&) = default;
};

inline constexpr int kNumActions = 5;

/// Normalized residual heading error after the action's nominal correction of
/// (action - 2) * pi/8, divided by pi/2. Lies in [0, 2].
double residual_heading(double heading_error, int action);

/// Alignment term 5 * (1 - residual_heading) in [-5, 5].
double alignment_reward(double heading_error, int action);

/// Per-step reward. Collision and GoalReached override shaping. Throws
/// InvalidStateError for initial_distance <= 0 or an action outside 0..4.
/// `previous_distance` is only read in Progress mode.
double compute_reward(double heading_error, int action, double current_distance,
                      double initial_distance, StepStatus status, const RewardConfig& cfg = {},
                      double previous_distance = 0.0);

}  // namespace navrl::world
