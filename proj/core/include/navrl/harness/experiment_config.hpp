#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "navrl/neural/optimizer.hpp"
#include "navrl/neural/qnetwork.hpp"
#include "navrl/rl/agent.hpp"
#include "navrl/rl/learner.hpp"
#include "navrl/world/world_config.hpp"

namespace navrl::harness {

/// Every tunable of a run. Defaults reproduce the reference setup; each key can be
/// set from a config file section or a `--section.key value` flag.
struct ExperimentConfig {
  world::EnvConfig env;
  neural::NetworkConfig network;
  neural::OptimizerConfig optimizer;
  rl::AgentConfig agent;
  rl::AgentVariant variant = rl::AgentVariant::DqnGruSkip;
  std::uint64_t seed = 0;
  std::size_t episodes = 3000;
  std::string output_dir = "runs/default";
  std::vector<std::size_t> milestones{500, 1000, 3000};
  std::size_t eval_episodes = 100;
  std::size_t eval_workers = 1;
  /// Unset: the network is initialized from `seed`.
  std::optional<std::uint64_t> init_seed;

  /// Throws ConfigError (carrying `line`) for unknown keys or malformed values.
  void apply(std::string_view key, std::string_view value, std::size_t line = 0);
  void apply_text(std::string_view text);

  /// Fills variant-dependent defaults (topology, action skip, init seed).
  ExperimentConfig resolved() const;
  void validate() const;

  /// Resolved snapshot in config-file syntax; parse(to_text()).resolved() == resolved().
  std::string to_text() const;

  static ExperimentConfig parse(std::string_view text);

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

}  // namespace navrl::harness
