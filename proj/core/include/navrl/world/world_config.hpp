#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "navrl/world/geometry.hpp"
#include "navrl/world/kinematics.hpp"
#include "navrl/world/reward.hpp"

namespace navrl::world {

/// Static arena description. `wall_segments` includes the four boundary walls.
struct WorldConfig {
  Rect arena_bounds{-2.0, -2.0, 2.0, 2.0};
  std::vector<Segment> wall_segments = boundary_walls(Rect{-2.0, -2.0, 2.0, 2.0});
  std::vector<Circle> circular_obstacles;
  std::size_t lidar_beams = 24;
  double lidar_max_range = 3.5;
  double goal_radius = 0.2;
  double goal_clearance = 0.3;
  double goal_min_robot_distance = 0.5;

  static std::vector<Segment> boundary_walls(const Rect& r);

  /// A closed w x h box centered on the origin.
  static WorldConfig walled_arena(double width, double height);

  void validate(double body_radius) const;
  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

/// Everything an environment instance needs.
struct EnvConfig {
  WorldConfig world;
  RobotParams robot;
  RewardConfig reward;
  double time_limit_s = 50.0;
  Pose2D start_pose{0.0, 0.0, 0.0};
  bool random_start = false;
  /// Evaluation semantics: the episode ends at the first goal instead of respawning it.
  bool end_on_goal = false;

  void validate() const;
  friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

/// Applies one `section.key = value` setting. Returns false if the key is not a
/// world key; throws ConfigError (with `line`) if the value is malformed.
/// Recognized sections: arena, robot, lidar, reward, goal.
bool apply_world_setting(EnvConfig& cfg, std::string_view key, std::string_view value,
                         std::size_t line = 0);

/// Writes every world key in `section.key = value` form, grouped by section.
std::string format_world_settings(const EnvConfig& cfg);

/// Parses a standalone world description file. Unknown keys are rejected.
EnvConfig parse_world_config(std::string_view text);

}  // namespace navrl::world
