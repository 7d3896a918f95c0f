#include "navrl/rl/navigation_task.hpp"

namespace navrl::rl {

EnvTransition NavigationTask::step(int action) {
  auto out = env_.step(action);
  EnvTransition t;
  t.observation = std::move(out.observation.values);
  t.reward = out.reward;
  t.status = out.status;
  t.done = env_.done();
  t.terminal = out.status == StepStatus::Collision ||
               (out.status == StepStatus::GoalReached && env_.config().end_on_goal);
  return t;
}

}  // namespace navrl::rl
