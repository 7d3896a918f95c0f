#pragma once

#include <vector>

namespace navrl::world {

/// Planar pose. yaw is kept in (-pi, pi].
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  friend bool operator==(const Pose2D&, const Pose2D&) = default;
};

struct RobotParams {
  double linear_velocity = 0.15;  // m/s, constant
  double control_dt = 0.2;        // s
  double body_radius = 0.15;      // m
  std::vector<double> angular_velocities{-1.5, -0.75, 0.0, 0.75, 1.5};  // rad/s, one per action

  /// Throws ConfigError on a violated invariant.
  void validate() const;
  friend bool operator==(const RobotParams&, const RobotParams&) = default;
};

/// Exact unicycle integration for constant (v, omega) over dt.
/// Throws InvalidStateError on non-finite input or dt <= 0.
Pose2D step_kinematics(const Pose2D& pose, double v, double omega, double dt);

}  // namespace navrl::world
