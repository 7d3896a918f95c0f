#pragma once

#include "navrl/rl/environment.hpp"
#include "navrl/world/navigation_env.hpp"

namespace navrl::rl {

/// The robot-navigation arena behind the Environment interface.
/// Only collisions (and a goal that ends the episode) are terminal for
/// bootstrapping; a timeout truncates the episode without being terminal.
class NavigationTask final : public Environment {
 public:
  NavigationTask(world::EnvConfig config, std::uint64_t seed) : env_(std::move(config), seed) {}

  std::vector<double> reset() override { return env_.reset().values; }
  EnvTransition step(int action) override;
  void reseed(std::uint64_t seed) override { env_.reseed(seed); }
  std::size_t observation_size() const override { return env_.config().world.lidar_beams + 2; }
  std::size_t action_count() const override {
    return env_.config().robot.angular_velocities.size();
  }
  double control_dt() const override { return env_.config().robot.control_dt; }

  const world::NavigationEnv& env() const { return env_; }

 private:
  world::NavigationEnv env_;
};

}  // namespace navrl::rl
