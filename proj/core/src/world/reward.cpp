#include "navrl/world/reward.hpp"

#include <cmath>
#include <numbers>

#include "navrl/errors.hpp"
#include "navrl/world/geometry.hpp"

namespace navrl::world {

std::string_view to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Running: return "running";
    case StepStatus::GoalReached: return "goal";
    case StepStatus::Collision: return "collision";
    case StepStatus::Timeout: return "timeout";
  }
  return "unknown";
}

double residual_heading(double heading_error, int action) {
  if (action < 0 || action >= kNumActions)
    throw InvalidStateError("reward: action index out of range");
  const double correction = static_cast<double>(action - 2) * std::numbers::pi / 8.0;
  return std::abs(wrap_to_pi(heading_error - correction)) / (std::numbers::pi / 2.0);
}

double alignment_reward(double heading_error, int action) {
  return 5.0 * (1.0 - residual_heading(heading_error, action));
}

double compute_reward(double heading_error, int action, double current_distance,
                      double initial_distance, StepStatus status, const RewardConfig& cfg,
                      double previous_distance) {
  if (!(initial_distance > 0.0)) throw InvalidStateError("reward: D_g must be > 0");
  if (action < 0 || action >= kNumActions)
    throw InvalidStateError("reward: action index out of range");
  switch (status) {
    case StepStatus::Collision: return cfg.collision_penalty;
    case StepStatus::GoalReached: return cfg.goal_reward;
    case StepStatus::Running:
    case StepStatus::Timeout: break;
  }
  if (cfg.mode == RewardMode::Progress)
    return cfg.progress_scale * (previous_distance - current_distance);
  const double r_theta = alignment_reward(heading_error, action);
  const double r_d = 2.0 * (current_distance / initial_distance);
  return r_theta * r_d;
}

}  // namespace navrl::world
