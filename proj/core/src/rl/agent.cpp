#include "navrl/rl/agent.hpp"

#include <algorithm>
#include <cmath>

#include "navrl/errors.hpp"

namespace navrl::rl {

using neural::NdArray;
using neural::QNetwork;

std::string_view to_string(AgentVariant v) {
  switch (v) {
    case AgentVariant::DqnAlone: return "dqn";
    case AgentVariant::DqnGru: return "dqn-gru";
    case AgentVariant::DqnGruSkip: return "dqn-gru-skip";
  }
  return "unknown";
}

AgentVariant parse_variant(std::string_view name) {
  if (name == "dqn") return AgentVariant::DqnAlone;
  if (name == "dqn-gru") return AgentVariant::DqnGru;
  if (name == "dqn-gru-skip") return AgentVariant::DqnGruSkip;
  throw ConfigError("unknown variant '" + std::string(name) +
                    "' (expected dqn, dqn-gru or dqn-gru-skip)");
}

neural::Topology topology_for(AgentVariant v) {
  return v == AgentVariant::DqnAlone ? neural::Topology::FeedForward : neural::Topology::Recurrent;
}

int default_action_skip(AgentVariant v) { return v == AgentVariant::DqnGruSkip ? 10 : 1; }

std::string_view to_string(EpisodeOutcome o) {
  switch (o) {
    case EpisodeOutcome::Goal: return "goal";
    case EpisodeOutcome::Collision: return "collision";
    case EpisodeOutcome::Timeout: return "timeout";
  }
  return "unknown";
}

EpisodeOutcome parse_outcome(std::string_view s) {
  if (s == "goal") return EpisodeOutcome::Goal;
  if (s == "collision") return EpisodeOutcome::Collision;
  if (s == "timeout") return EpisodeOutcome::Timeout;
  throw ConfigError("unknown episode outcome '" + std::string(s) + "'");
}

namespace {

NdArray primed_window(const std::vector<double>& obs, std::size_t seq_len) {
  NdArray w({seq_len, obs.size()});
  for (std::size_t t = 0; t < seq_len; ++t)
    std::copy(obs.begin(), obs.end(), w.raw() + t * obs.size());
  return w;
}

NdArray shifted_window(const NdArray& window, const std::vector<double>& obs) {
  const std::size_t steps = window.dim(0);
  const std::size_t width = window.dim(1);
  if (obs.size() != width) throw DimensionError("observation width changed mid-episode");
  NdArray next({steps, width});
  std::copy(window.raw() + width, window.raw() + steps * width, next.raw());
  std::copy(obs.begin(), obs.end(), next.raw() + (steps - 1) * width);
  return next;
}

EpisodeOutcome outcome_of(StepStatus s) {
  switch (s) {
    case StepStatus::GoalReached: return EpisodeOutcome::Goal;
    case StepStatus::Collision: return EpisodeOutcome::Collision;
    default: return EpisodeOutcome::Timeout;
  }
}

struct StepHooks {
  // Called after every environment step with the stored transition.
  std::function<void(Transition&&)> on_transition;
};

/// Shared act/observe loop for training and greedy evaluation.
EpisodeRecord episode_loop(Environment& env, const QNetwork& acting, const SkipPolicy& policy,
                           double epsilon, Rng& rng, std::size_t max_steps,
                           std::size_t episode_index, const StepHooks& hooks,
                           const StepObserver& observer) {
  const std::size_t seq_len = acting.config().seq_len;
  NdArray window = primed_window(env.reset(), seq_len);

  EpisodeRecord rec;
  rec.episode = episode_index;
  rec.epsilon = epsilon;
  double max_q_sum = 0.0;
  std::optional<int> prev;
  StepStatus last = StepStatus::Timeout;

  for (std::size_t t = 1; t <= max_steps; ++t) {
    const auto q = neural::forward_q(acting, window).q;
    max_q_sum += *std::max_element(q.data().begin(), q.data().end());
    const int action = select_action(q.data(), t, epsilon, prev, policy, rng);
    prev = action;

    EnvTransition step = env.step(action);
    rec.steps = t;
    rec.total_reward += step.reward;
    if (step.status == StepStatus::GoalReached && !rec.time_to_goal_s)
      rec.time_to_goal_s = static_cast<double>(t) * env.control_dt();
    if (observer) observer(t, action, step);

    NdArray next = shifted_window(window, step.observation);
    if (hooks.on_transition)
      hooks.on_transition(Transition{window, action, step.reward, next, step.terminal});
    window = std::move(next);
    last = step.status;
    if (step.done) break;
  }
  rec.outcome = outcome_of(last);
  rec.mean_max_q = rec.steps ? max_q_sum / static_cast<double>(rec.steps) : 0.0;
  rec.sim_time_s = static_cast<double>(rec.steps) * env.control_dt();
  return rec;
}

}  // namespace

EpisodeRecord run_greedy_episode(Environment& env, const QNetwork& net, const SkipPolicy& policy,
                                 std::size_t max_steps, std::size_t episode_index,
                                 const StepObserver& observer) {
  Rng unused(0);  // epsilon = 0 never explores; draws from this are discarded
  return episode_loop(env, net, policy, 0.0, unused, max_steps, episode_index, {}, observer);
}

DqnAgent::DqnAgent(AgentVariant variant, AgentConfig config, neural::NetworkConfig network,
                   neural::OptimizerConfig optimizer, std::uint64_t seed)
    : variant_(variant),
      config_(config),
      action_skip_(config.action_skip > 0 ? config.action_skip : default_action_skip(variant)),
      online_([&] {
        network.topology = topology_for(variant);
        return network;
      }()),
      target_(online_),
      optimizer_(optimizer, online_.parameters()),
      replay_(config.replay_capacity, derive_seed(seed, SeedStream::Replay)),
      explore_rng_(derive_seed(seed, SeedStream::Exploration)) {
  config_.validate();
  config_.action_skip = action_skip_;
}

double DqnAgent::epsilon() const {
  return epsilon_for_episode(config_.epsilon_start, config_.epsilon_decay, config_.epsilon_min,
                             episodes_);
}

EpisodeRecord DqnAgent::run_episode(Environment& env) {
  if (env.observation_size() != online_.config().obs_dim ||
      env.action_count() != online_.config().n_actions)
    throw DimensionError("DqnAgent: environment does not match the network's input/output");
  const std::size_t learn_after = std::max(config_.learning_start, config_.batch_size);
  StepHooks hooks;
  hooks.on_transition = [&](Transition&& tr) {
    replay_.push(std::move(tr));
    ++env_steps_;
    if (replay_.size() >= learn_after && env_steps_ % config_.train_every == 0) {
      last_loss_ = train_step(online_, target_, replay_, optimizer_, config_);
      if (last_loss_) ++gradient_steps_;
    }
    if (env_steps_ % config_.target_update_interval == 0) {
      sync_target(online_, target_);
      ++target_syncs_;
    }
  };
  // Acting reads online_ while hooks update it; forward passes never hold a cache across steps.
  auto rec = episode_loop(env, online_, skip_policy(), epsilon(), explore_rng_,
                          config_.max_steps_per_episode, episodes_ + 1, hooks, {});
  ++episodes_;
  return rec;
}

neural::Checkpoint DqnAgent::checkpoint() const {
  neural::Checkpoint c;
  c.network_config = online_.config();
  c.parameters = online_.parameters();
  c.optimizer = optimizer_;
  c.rng_state["exploration"] = save_rng(explore_rng_);
  c.rng_state["replay"] = save_rng(replay_.rng());
  c.metadata["variant"] = std::string(to_string(variant_));
  c.metadata["action_skip"] = std::to_string(action_skip_);
  c.metadata["skip_gates_exploration"] = config_.skip_gates_exploration ? "true" : "false";
  c.metadata["episodes"] = std::to_string(episodes_);
  c.metadata["env_steps"] = std::to_string(env_steps_);
  return c;
}

void train(DqnAgent& agent, Environment& env, std::size_t episodes,
           const std::function<void(const EpisodeRecord&, const DqnAgent&)>& on_episode) {
  for (std::size_t e = 0; e < episodes; ++e) {
    const auto rec = agent.run_episode(env);
    if (on_episode) on_episode(rec, agent);
  }
}

}  // namespace navrl::rl
