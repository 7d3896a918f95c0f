#include "navrl/world/kinematics.hpp"

#include <cmath>

#include "navrl/errors.hpp"
#include "navrl/world/geometry.hpp"

namespace navrl::world {

void RobotParams::validate() const {
  if (!(linear_velocity > 0.0)) throw ConfigError("robot.linear_velocity must be > 0");
  if (!(control_dt > 0.0)) throw ConfigError("robot.control_dt must be > 0");
  if (!(body_radius > 0.0)) throw ConfigError("robot.body_radius must be > 0");
  if (angular_velocities.size() != 5)
    throw ConfigError("robot.angular_velocities needs exactly 5 entries");
  for (std::size_t i = 1; i < angular_velocities.size(); ++i)
    if (!(angular_velocities[i] > angular_velocities[i - 1]))
      throw ConfigError("robot.angular_velocities must be strictly increasing");
  for (std::size_t i = 0; i < angular_velocities.size(); ++i) {
    const double mirror = angular_velocities[angular_velocities.size() - 1 - i];
    if (std::abs(angular_velocities[i] + mirror) > 1e-12)
      throw ConfigError("robot.angular_velocities must be symmetric about 0");
  }
}

Pose2D step_kinematics(const Pose2D& pose, double v, double omega, double dt) {
  if (!std::isfinite(pose.x) || !std::isfinite(pose.y) || !std::isfinite(pose.yaw) ||
      !std::isfinite(v) || !std::isfinite(omega) || !std::isfinite(dt))
    throw InvalidStateError("step_kinematics: non-finite input");
  if (!(dt > 0.0)) throw InvalidStateError("step_kinematics: dt must be > 0");

  const double turn = omega * dt;
  if (std::abs(omega) < 1e-9) {
    return {pose.x + v * dt * std::cos(pose.yaw), pose.y + v * dt * std::sin(pose.yaw),
            wrap_to_pi(pose.yaw + turn)};
  }
  // (v/w)(sin(a+d) - sin a) = (2v/w) sin(d/2) cos(a + d/2), likewise for cos;
  // the product form avoids cancellation when d is small.
  const double chord = 2.0 * v / omega * std::sin(0.5 * turn);
  const double mid = pose.yaw + 0.5 * turn;
  return {pose.x + chord * std::cos(mid), pose.y + chord * std::sin(mid),
          wrap_to_pi(pose.yaw + turn)};
}

}  // namespace navrl::world
