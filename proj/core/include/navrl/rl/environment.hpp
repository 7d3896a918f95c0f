#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "navrl/world/reward.hpp"

namespace navrl::rl {

using world::StepStatus;

struct EnvTransition {
  std::vector<double> observation;
  double reward = 0.0;
  StepStatus status = StepStatus::Running;
  /// The episode is over after this step.
  bool done = false;
  /// Targets must not bootstrap past this step.
  bool terminal = false;
};

/// What the learning loop needs from a task. Implementations own their randomness.
class Environment {
 public:
  virtual ~Environment() = default;
  virtual std::vector<double> reset() = 0;
  virtual EnvTransition step(int action) = 0;
  virtual void reseed(std::uint64_t seed) = 0;
  virtual std::size_t observation_size() const = 0;
  virtual std::size_t action_count() const = 0;
  /// Seconds of simulated time per step.
  virtual double control_dt() const = 0;
};

}  // namespace navrl::rl
