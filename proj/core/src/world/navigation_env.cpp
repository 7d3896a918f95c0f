#include "navrl/world/navigation_env.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "navrl/errors.hpp"

namespace navrl::world {

namespace {
constexpr int kMaxSpawnAttempts = 1000;
// Extra margin over body_radius when sampling a random start pose.
constexpr double kStartMargin = 0.1;
}  // namespace

double heading_error(const Pose2D& pose, Vec2 goal) {
  const double dx = goal.x - pose.x;
  const double dy = goal.y - pose.y;
  if (dx == 0.0 && dy == 0.0) return 0.0;
  return wrap_to_pi(std::atan2(dy, dx) - pose.yaw);
}

double distance_to_goal(const Pose2D& pose, Vec2 goal) {
  return std::hypot(goal.x - pose.x, goal.y - pose.y);
}

double min_obstacle_distance(Vec2 p, const WorldConfig& world) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : world.wall_segments) best = std::min(best, distance_to_segment(p, s));
  for (const auto& c : world.circular_obstacles) best = std::min(best, distance_to_circle(p, c));
  return best;
}

StepStatus check_termination(const Pose2D& pose, const WorldConfig& world, const GoalState& goal,
                             double body_radius, double elapsed_s, double time_limit_s) {
  const Vec2 p{pose.x, pose.y};
  if (!world.arena_bounds.contains(p) || min_obstacle_distance(p, world) < body_radius)
    return StepStatus::Collision;
  if (distance_to_goal(pose, goal.position) < world.goal_radius) return StepStatus::GoalReached;
  // Elapsed time is steps * dt; the slack absorbs the rounding in that product.
  if (elapsed_s >= time_limit_s - 1e-9) return StepStatus::Timeout;
  return StepStatus::Running;
}

GoalState spawn_goal(Rng& rng, const WorldConfig& world, const Pose2D& robot_pose) {
  const Rect& r = world.arena_bounds;
  const double m = world.goal_clearance;
  if (r.width() > 2.0 * m && r.height() > 2.0 * m) {
    for (int attempt = 0; attempt < kMaxSpawnAttempts; ++attempt) {
      const Vec2 p{uniform(rng, r.min_x + m, r.max_x - m), uniform(rng, r.min_y + m, r.max_y - m)};
      if (min_obstacle_distance(p, world) < m) continue;
      const double d = distance_to_goal(robot_pose, p);
      if (d < world.goal_min_robot_distance || !(d > 0.0)) continue;
      return {p, d};
    }
  }
  throw ConfigError("spawn_goal: no feasible goal position after 1000 attempts");
}

Observation make_observation(const LidarScan& scan, const Pose2D& pose, const GoalState& goal,
                             const WorldConfig& world) {
  Observation obs;
  obs.values.reserve(scan.ranges.size() + 2);
  for (double range : scan.ranges)
    obs.values.push_back(std::clamp(range / world.lidar_max_range, 0.0, 1.0));
  obs.values.push_back(heading_error(pose, goal.position) / std::numbers::pi);
  obs.values.push_back(
      std::clamp(distance_to_goal(pose, goal.position) / world.arena_bounds.diagonal(), 0.0, 1.0));
  return obs;
}

NavigationEnv::NavigationEnv(EnvConfig config, std::uint64_t seed)
    : config_(std::move(config)), rng_(seed) {
  config_.validate();
}

Observation NavigationEnv::reset() {
  steps_ = 0;
  goals_reached_ = 0;
  if (config_.random_start) {
    const Rect& r = config_.world.arena_bounds;
    const double m = config_.robot.body_radius + kStartMargin;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxSpawnAttempts && !placed; ++attempt) {
      const Vec2 p{uniform(rng_, r.min_x + m, r.max_x - m), uniform(rng_, r.min_y + m, r.max_y - m)};
      const double yaw = wrap_to_pi(uniform(rng_, -std::numbers::pi, std::numbers::pi));
      if (min_obstacle_distance(p, config_.world) < m) continue;
      pose_ = {p.x, p.y, yaw};
      placed = true;
    }
    if (!placed) throw ConfigError("reset: no feasible random start pose");
  } else {
    pose_ = config_.start_pose;
    pose_.yaw = wrap_to_pi(pose_.yaw);
  }
  goal_ = spawn_goal(rng_, config_.world, pose_);
  scan_ = cast_lidar(pose_, config_.world);
  done_ = false;
  return make_observation(scan_, pose_, goal_, config_.world);
}

StepOutcome NavigationEnv::step(int action) {
  if (done_) throw ContractViolation("NavigationEnv::step called on a finished episode");
  const auto& robot = config_.robot;
  if (action < 0 || static_cast<std::size_t>(action) >= robot.angular_velocities.size())
    throw ContractViolation("NavigationEnv::step: action index out of range");

  const double h = heading_error(pose_, goal_.position);
  const double previous_distance = distance_to_goal(pose_, goal_.position);
  pose_ = step_kinematics(pose_, robot.linear_velocity,
                          robot.angular_velocities[static_cast<std::size_t>(action)],
                          robot.control_dt);
  ++steps_;
  if (config_.world.arena_bounds.contains({pose_.x, pose_.y}))
    scan_ = cast_lidar(pose_, config_.world);

  StepOutcome out;
  out.status = check_termination(pose_, config_.world, goal_, robot.body_radius, elapsed_s(),
                                 config_.time_limit_s);
  out.reward = compute_reward(h, action, distance_to_goal(pose_, goal_.position),
                              goal_.initial_distance, out.status, config_.reward,
                              previous_distance);

  switch (out.status) {
    case StepStatus::GoalReached:
      ++goals_reached_;
      if (config_.end_on_goal || elapsed_s() >= config_.time_limit_s - 1e-9)
        done_ = true;
      else
        goal_ = spawn_goal(rng_, config_.world, pose_);
      break;
    case StepStatus::Collision:
    case StepStatus::Timeout:
      done_ = true;
      break;
    case StepStatus::Running:
      break;
  }
  out.observation = make_observation(scan_, pose_, goal_, config_.world);
  return out;
}

}  // namespace navrl::world
