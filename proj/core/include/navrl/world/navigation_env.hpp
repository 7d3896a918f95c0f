#pragma once

#include <cstdint>
#include <vector>

#include "navrl/random.hpp"
#include "navrl/world/kinematics.hpp"
#include "navrl/world/lidar.hpp"
#include "navrl/world/reward.hpp"
#include "navrl/world/world_config.hpp"

namespace navrl::world {

struct GoalState {
  Vec2 position;
  double initial_distance = 0.0;  // D_g, frozen at spawn
  friend bool operator==(const GoalState&, const GoalState&) = default;
};

inline constexpr std::size_t kObservationSize = 26;

/// 24 normalized ranges, heading error / pi, and D_c / arena diagonal.
struct Observation {
  std::vector<double> values;
  friend bool operator==(const Observation&, const Observation&) = default;
};

struct StepOutcome {
  double reward = 0.0;
  StepStatus status = StepStatus::Running;
  Observation observation;
  friend bool operator==(const StepOutcome&, const StepOutcome&) = default;
};

/// h = wrap(atan2(gy - y, gx - x) - yaw); 0 when the robot sits exactly on the goal.
double heading_error(const Pose2D& pose, Vec2 goal);

double distance_to_goal(const Pose2D& pose, Vec2 goal);

/// Smallest clearance from the robot centre to any wall or obstacle surface.
double min_obstacle_distance(Vec2 p, const WorldConfig& world);

/// Collision > GoalReached > Timeout > Running.
StepStatus check_termination(const Pose2D& pose, const WorldConfig& world, const GoalState& goal,
                             double body_radius, double elapsed_s, double time_limit_s);

/// Rejection-samples a goal at least goal_clearance from every wall and obstacle and
/// goal_min_robot_distance from the robot. Throws ConfigError after 1000 failed draws.
GoalState spawn_goal(Rng& rng, const WorldConfig& world, const Pose2D& robot_pose);

Observation make_observation(const LidarScan& scan, const Pose2D& pose, const GoalState& goal,
                             const WorldConfig& world);

/// One robot in one arena. Owns its random generator; instances share nothing.
class NavigationEnv {
 public:
  NavigationEnv(EnvConfig config, std::uint64_t seed);

  /// Starts a new episode: start pose, fresh goal, fresh scan.
  Observation reset();

  /// Throws ContractViolation if the episode has already ended.
  StepOutcome step(int action);

  void reseed(std::uint64_t seed) { rng_.seed(seed); }

  const EnvConfig& config() const { return config_; }
  const Pose2D& pose() const { return pose_; }
  const GoalState& goal() const { return goal_; }
  const LidarScan& scan() const { return scan_; }
  int steps() const { return steps_; }
  double elapsed_s() const { return steps_ * config_.robot.control_dt; }
  bool done() const { return done_; }
  int goals_reached() const { return goals_reached_; }

 private:
  EnvConfig config_;
  Rng rng_;
  Pose2D pose_;
  GoalState goal_;
  LidarScan scan_;
  int steps_ = 0;
  int goals_reached_ = 0;
  bool done_ = true;
};

}  // namespace navrl::world
