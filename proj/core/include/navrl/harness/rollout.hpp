#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "navrl/neural/qnetwork.hpp"
#include "navrl/rl/policy.hpp"
#include "navrl/world/navigation_env.hpp"

namespace navrl::harness {

struct RolloutRow {
  std::size_t t = 0;
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  int action = 0;
  double reward = 0.0;
  double distance_to_goal = 0.0;
  double min_scan = 0.0;
  world::StepStatus status = world::StepStatus::Running;
  friend bool operator==(const RolloutRow&, const RolloutRow&) = default;
};

inline constexpr std::string_view kTrajectoryHeader = "t,x,y,yaw,action,reward,D_c,min_scan,status";

/// One greedy episode (ending at the first goal), one row per step.
std::vector<RolloutRow> rollout(const neural::QNetwork& net, world::EnvConfig env,
                                const rl::SkipPolicy& policy, std::size_t max_steps,
                                std::uint64_t seed);

std::string format_trajectory_csv(const std::vector<RolloutRow>& rows);
std::vector<RolloutRow> parse_trajectory_csv(std::string_view text);

}  // namespace navrl::harness
