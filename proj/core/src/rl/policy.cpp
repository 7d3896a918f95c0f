#include "navrl/rl/policy.hpp"

#include <algorithm>
#include <cmath>

#include "navrl/errors.hpp"
#include "navrl/neural/qnetwork.hpp"

namespace navrl::rl {

int select_action(std::span<const double> q_values, std::size_t t, double epsilon,
                  std::optional<int> prev_action, const SkipPolicy& policy, Rng& rng) {
  if (q_values.empty()) throw ContractViolation("select_action: no Q-values");
  if (policy.action_skip < 1) throw ContractViolation("select_action: action_skip must be >= 1");
  const auto k = static_cast<std::size_t>(policy.action_skip);
  const bool fresh = t <= 1 || !prev_action || t % k == 0;

  const double u = uniform01(rng);
  const bool may_explore = !policy.skip_gates_exploration || fresh;
  if (may_explore && u < epsilon)
    return static_cast<int>(uniform_index(rng, q_values.size()));
  if (!fresh) return *prev_action;
  return static_cast<int>(neural::argmax(q_values));
}

double epsilon_for_episode(double epsilon_start, double decay, double epsilon_min,
                           std::size_t episode) {
  return std::max(epsilon_min, epsilon_start * std::pow(decay, static_cast<double>(episode)));
}

}  // namespace navrl::rl
