#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "navrl/neural/qnetwork.hpp"
#include "navrl/rl/agent.hpp"
#include "navrl/world/world_config.hpp"

namespace navrl::harness {

struct EvalSpec {
  world::EnvConfig env;  // end_on_goal is forced on
  rl::SkipPolicy policy;
  std::size_t max_steps = 250;
  std::size_t n_episodes = 100;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct EvalSummary {
  std::size_t n_episodes = 0;
  double success_rate = 0.0;
  std::optional<double> avg_time_to_goal_s;  // successes only
  std::vector<rl::EpisodeRecord> episodes;
  friend bool operator==(const EvalSummary&, const EvalSummary&) = default;
};

/// Greedy episodes; episode i runs in a fresh environment seeded with
/// derive_seed(seed, Evaluation, i), so any worker count gives the same records.
/// Success means the episode ended at a goal without a collision.
EvalSummary evaluate(const neural::QNetwork& net, const EvalSpec& spec);

EvalSummary summarize(std::vector<rl::EpisodeRecord> episodes);

std::string summary_to_json(const EvalSummary& s, const std::string& checkpoint_path = {});

}  // namespace navrl::harness
