#include "navrl/rl/learner.hpp"

#include <algorithm>
#include <cmath>

#include "navrl/errors.hpp"

namespace navrl::rl {

using neural::QNetwork;

void AgentConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("agent.gamma must be in (0, 1)");
  if (!(epsilon_min >= 0.0 && epsilon_min <= epsilon_start && epsilon_start <= 1.0))
    throw ConfigError("agent epsilon needs 0 <= epsilon_min <= epsilon_start <= 1");
  if (!(epsilon_decay > 0.0 && epsilon_decay <= 1.0))
    throw ConfigError("agent.epsilon_decay must be in (0, 1]");
  if (action_skip < 0) throw ConfigError("agent.action_skip must be >= 1 (or 0 for the default)");
  if (batch_size < 1) throw ConfigError("agent.batch_size must be >= 1");
  if (batch_size > replay_capacity) throw ConfigError("agent.batch_size exceeds replay_capacity");
  if (target_update_interval < 1) throw ConfigError("agent.target_update_interval must be >= 1");
  if (train_every < 1) throw ConfigError("agent.train_every must be >= 1");
  if (max_steps_per_episode < 1) throw ConfigError("agent.max_steps_per_episode must be >= 1");
}

NdArray stack_windows(std::span<const Transition* const> batch, bool next) {
  if (batch.empty()) throw ContractViolation("stack_windows: empty batch");
  const NdArray& first = next ? batch[0]->next_window : batch[0]->window;
  const std::size_t steps = first.dim(0);
  const std::size_t obs = first.dim(1);
  NdArray out({batch.size(), steps, obs});
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const NdArray& w = next ? batch[b]->next_window : batch[b]->window;
    neural::expect_shape(w, {steps, obs}, "stack_windows");
    std::copy(w.data().begin(), w.data().end(), out.raw() + b * steps * obs);
  }
  return out;
}

std::vector<double> compute_targets(std::span<const Transition* const> batch,
                                    const QNetwork& target, double gamma) {
  if (batch.empty()) throw ContractViolation("compute_targets: empty batch");
  const auto q_next = neural::forward_q(target, stack_windows(batch, true)).q;
  const std::size_t actions = q_next.dim(1);
  std::vector<double> y(batch.size());
  for (std::size_t j = 0; j < batch.size(); ++j) {
    if (batch[j]->terminal) {
      y[j] = batch[j]->reward;
      continue;
    }
    const auto row = q_next.data().subspan(j * actions, actions);
    y[j] = batch[j]->reward + gamma * *std::max_element(row.begin(), row.end());
  }
  return y;
}

LossAndGradients td_loss(const QNetwork& online, const QNetwork& target,
                         std::span<const Transition* const> batch, double gamma) {
  const auto y = compute_targets(batch, target, gamma);
  const auto fwd = neural::forward_q(online, stack_windows(batch, false));
  const std::size_t n = batch.size();
  const std::size_t actions = fwd.q.dim(1);
  NdArray dq({n, actions});
  double loss = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto a = static_cast<std::size_t>(batch[j]->action);
    if (a >= actions) throw ContractViolation("td_loss: stored action out of range");
    const double residual = y[j] - fwd.q(j, a);
    loss += residual * residual;
    dq(j, a) = -2.0 * residual / static_cast<double>(n);
  }
  loss /= static_cast<double>(n);
  return {loss, neural::backward_q(online, fwd.cache, dq)};
}

std::optional<double> train_step(QNetwork& online, const QNetwork& target, ReplayBuffer& buffer,
                                 neural::Optimizer& optimizer, const AgentConfig& config) {
  if (buffer.size() < config.batch_size) return std::nullopt;
  const auto batch = buffer.sample(config.batch_size);
  auto result = td_loss(online, target, batch, config.gamma);
  if (!std::isfinite(result.loss)) throw TrainingDivergence("non-finite TD loss");
  optimizer.step(online, result.gradients);
  return result.loss;
}

void sync_target(const QNetwork& online, QNetwork& target) { target.copy_parameters_from(online); }

}  // namespace navrl::rl
