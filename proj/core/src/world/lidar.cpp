#include "navrl/world/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "navrl/errors.hpp"

namespace navrl::world {

namespace {
// Ranges are reported in (0, max]; a zero hit (centre on a surface) maps here.
constexpr double kMinRange = 1e-9;
}  // namespace

double LidarScan::min_range() const {
  return ranges.empty() ? 0.0 : *std::min_element(ranges.begin(), ranges.end());
}

LidarScan cast_lidar(const Pose2D& pose, const WorldConfig& world) {
  if (!std::isfinite(pose.x) || !std::isfinite(pose.y) || !std::isfinite(pose.yaw))
    throw InvalidStateError("cast_lidar: non-finite pose");
  const Vec2 origin{pose.x, pose.y};
  if (!world.arena_bounds.contains(origin))
    throw InvalidStateError("cast_lidar: pose outside arena");

  LidarScan scan;
  scan.ranges.resize(world.lidar_beams);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(world.lidar_beams);
  for (std::size_t k = 0; k < world.lidar_beams; ++k) {
    const double angle = pose.yaw + static_cast<double>(k) * step;
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    double best = world.lidar_max_range;
    for (const auto& s : world.wall_segments)
      if (auto t = ray_segment_hit(origin, dir, s); t && *t < best) best = *t;
    for (const auto& c : world.circular_obstacles)
      if (auto t = ray_circle_hit(origin, dir, c); t && *t < best) best = *t;
    scan.ranges[k] = std::max(best, kMinRange);
  }
  return scan;
}

}  // namespace navrl::world
