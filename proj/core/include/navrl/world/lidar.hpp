#pragma once

#include <vector>

#include "navrl/world/kinematics.hpp"
#include "navrl/world/world_config.hpp"

namespace navrl::world {

struct LidarScan {
  std::vector<double> ranges;  // metres, each in (0, lidar_max_range]
  double min_range() const;
};

/// Beam k leaves the robot centre at yaw + k * 2pi / lidar_beams and reports the
/// nearest wall or obstacle hit, clamped to lidar_max_range.
/// Throws InvalidStateError if the pose is outside the arena.
LidarScan cast_lidar(const Pose2D& pose, const WorldConfig& world);

}  // namespace navrl::world
