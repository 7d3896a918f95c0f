#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "navrl/neural/checkpoint.hpp"
#include "navrl/neural/optimizer.hpp"
#include "navrl/neural/qnetwork.hpp"
#include "navrl/rl/environment.hpp"
#include "navrl/rl/learner.hpp"
#include "navrl/rl/policy.hpp"
#include "navrl/rl/replay_buffer.hpp"

namespace navrl::rl {

enum class AgentVariant : std::uint8_t {
  DqnAlone,    // feed-forward on the flattened window, no skipping
  DqnGru,      // recurrent, no skipping
  DqnGruSkip,  // recurrent, action skip 10
};

std::string_view to_string(AgentVariant v);
/// Accepts "dqn", "dqn-gru", "dqn-gru-skip". Throws ConfigError otherwise.
AgentVariant parse_variant(std::string_view name);
neural::Topology topology_for(AgentVariant v);
int default_action_skip(AgentVariant v);

enum class EpisodeOutcome : std::uint8_t { Goal, Collision, Timeout };

std::string_view to_string(EpisodeOutcome o);
EpisodeOutcome parse_outcome(std::string_view s);

struct EpisodeRecord {
  std::size_t episode = 0;  // 1-based
  std::size_t steps = 0;
  EpisodeOutcome outcome = EpisodeOutcome::Timeout;
  double total_reward = 0.0;
  double mean_max_q = 0.0;
  double epsilon = 0.0;
  double sim_time_s = 0.0;
  std::optional<double> time_to_goal_s;  // first goal arrival
  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

/// Per-step hook for rollouts: (t, action, transition).
using StepObserver = std::function<void(std::size_t, int, const EnvTransition&)>;

/// One greedy (epsilon = 0) episode with a frozen network. Never trains.
EpisodeRecord run_greedy_episode(Environment& env, const neural::QNetwork& net,
                                 const SkipPolicy& policy, std::size_t max_steps,
                                 std::size_t episode_index = 1,
                                 const StepObserver& observer = {});

/// Online/target networks, optimizer, replay memory, and exploration state.
class DqnAgent {
 public:
  DqnAgent(AgentVariant variant, AgentConfig config, neural::NetworkConfig network,
           neural::OptimizerConfig optimizer, std::uint64_t seed);

  AgentVariant variant() const { return variant_; }
  const AgentConfig& config() const { return config_; }
  SkipPolicy skip_policy() const { return {action_skip_, config_.skip_gates_exploration}; }
  int action_skip() const { return action_skip_; }

  const neural::QNetwork& online() const { return online_; }
  const neural::QNetwork& target() const { return target_; }
  const neural::Optimizer& optimizer() const { return optimizer_; }
  const ReplayBuffer& replay() const { return replay_; }

  /// Exploration rate for the next episode.
  double epsilon() const;
  std::size_t episodes_completed() const { return episodes_; }
  std::uint64_t env_steps() const { return env_steps_; }
  std::uint64_t gradient_steps() const { return gradient_steps_; }
  std::uint64_t target_syncs() const { return target_syncs_; }
  std::optional<double> last_loss() const { return last_loss_; }

  /// One training episode: act, store, learn, sync. Decays epsilon afterwards.
  EpisodeRecord run_episode(Environment& env);

  neural::Checkpoint checkpoint() const;

 private:
  AgentVariant variant_;
  AgentConfig config_;
  int action_skip_;
  neural::QNetwork online_;
  neural::QNetwork target_;
  neural::Optimizer optimizer_;
  ReplayBuffer replay_;
  Rng explore_rng_;
  std::size_t episodes_ = 0;
  std::uint64_t env_steps_ = 0;
  std::uint64_t gradient_steps_ = 0;
  std::uint64_t target_syncs_ = 0;
  std::optional<double> last_loss_;
};

/// Runs `episodes` training episodes, calling on_episode after each.
void train(DqnAgent& agent, Environment& env, std::size_t episodes,
           const std::function<void(const EpisodeRecord&, const DqnAgent&)>& on_episode = {});

}  // namespace navrl::rl
