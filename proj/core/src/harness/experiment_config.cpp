#include "navrl/harness/experiment_config.hpp"

#include <algorithm>
#include <sstream>

#include "navrl/config_text.hpp"
#include "navrl/errors.hpp"
#include "navrl/world/navigation_env.hpp"

namespace navrl::harness {

namespace {

std::size_t to_size(std::string_view v, std::size_t line) {
  return static_cast<std::size_t>(parse_uint(v, line));
}

bool apply_network(neural::NetworkConfig& n, std::optional<std::uint64_t>& init_seed,
                   std::string_view key, std::string_view value, std::size_t line) {
  if (key == "network.seq_len") n.seq_len = to_size(value, line);
  else if (key == "network.tdl_units") n.tdl_units = to_size(value, line);
  else if (key == "network.gru_units") n.gru_units = to_size(value, line);
  else if (key == "network.fc1_units") n.fc1_units = to_size(value, line);
  else if (key == "network.ff_units") n.ff_units = to_size(value, line);
  else if (key == "network.init_seed") init_seed = parse_uint(value, line);
  else if (key == "network.init_scheme") {
    const auto v = trim(value);
    if (v == "glorot_uniform") n.init_scheme = neural::InitScheme::GlorotUniform;
    else if (v == "zeros") n.init_scheme = neural::InitScheme::Zeros;
    else throw ConfigError("network.init_scheme must be glorot_uniform or zeros", line);
  } else {
    return false;
  }
  return true;
}

bool apply_optimizer(neural::OptimizerConfig& o, std::string_view key, std::string_view value,
                     std::size_t line) {
  if (key == "optimizer.kind") {
    const auto v = trim(value);
    if (v == "adam") o.kind = neural::OptimizerKind::Adam;
    else if (v == "sgd") o.kind = neural::OptimizerKind::Sgd;
    else throw ConfigError("optimizer.kind must be adam or sgd", line);
  } else if (key == "optimizer.learning_rate") {
    o.learning_rate = parse_double(value, line);
  } else if (key == "optimizer.beta1") {
    o.beta1 = parse_double(value, line);
  } else if (key == "optimizer.beta2") {
    o.beta2 = parse_double(value, line);
  } else if (key == "optimizer.epsilon") {
    o.epsilon = parse_double(value, line);
  } else {
    return false;
  }
  return true;
}

bool apply_agent(rl::AgentConfig& a, std::string_view key, std::string_view value,
                 std::size_t line) {
  if (key == "agent.gamma") a.gamma = parse_double(value, line);
  else if (key == "agent.batch_size") a.batch_size = to_size(value, line);
  else if (key == "agent.target_update_interval") a.target_update_interval = parse_uint(value, line);
  else if (key == "agent.epsilon_start") a.epsilon_start = parse_double(value, line);
  else if (key == "agent.epsilon_decay") a.epsilon_decay = parse_double(value, line);
  else if (key == "agent.epsilon_min") a.epsilon_min = parse_double(value, line);
  else if (key == "agent.action_skip") a.action_skip = static_cast<int>(parse_int(value, line));
  else if (key == "agent.skip_gates_exploration") a.skip_gates_exploration = parse_bool(value, line);
  else if (key == "agent.replay_capacity") a.replay_capacity = to_size(value, line);
  else if (key == "agent.learning_start") a.learning_start = to_size(value, line);
  else if (key == "agent.train_every") a.train_every = to_size(value, line);
  else if (key == "agent.max_steps_per_episode") a.max_steps_per_episode = to_size(value, line);
  else return false;
  return true;
}

}  // namespace

void ExperimentConfig::apply(std::string_view key, std::string_view value, std::size_t line) {
  if (world::apply_world_setting(env, key, value, line)) return;
  if (apply_network(network, init_seed, key, value, line)) return;
  if (apply_optimizer(optimizer, key, value, line)) return;
  if (apply_agent(agent, key, value, line)) return;
  if (key == "experiment.variant") {
    variant = rl::parse_variant(trim(value));
  } else if (key == "experiment.seed") {
    seed = parse_uint(value, line);
  } else if (key == "experiment.episodes") {
    episodes = to_size(value, line);
  } else if (key == "experiment.output_dir") {
    output_dir = std::string(trim(value));
  } else if (key == "experiment.milestones") {
    milestones.clear();
    for (double m : parse_double_list(value, line)) {
      if (m < 1 || m != static_cast<double>(static_cast<std::size_t>(m)))
        throw ConfigError("experiment.milestones must be positive integers", line);
      milestones.push_back(static_cast<std::size_t>(m));
    }
  } else if (key == "experiment.eval_episodes") {
    eval_episodes = to_size(value, line);
  } else if (key == "experiment.eval_workers") {
    eval_workers = to_size(value, line);
  } else {
    throw ConfigError("unknown key '" + std::string(key) + "'", line);
  }
}

void ExperimentConfig::apply_text(std::string_view text) {
  for (const auto& e : parse_kv_text(text)) apply(e.key, e.value, e.line);
}

ExperimentConfig ExperimentConfig::resolved() const {
  ExperimentConfig r = *this;
  r.network.topology = rl::topology_for(variant);
  r.network.obs_dim = env.world.lidar_beams + 2;
  r.network.n_actions = env.robot.angular_velocities.size();
  if (r.agent.action_skip == 0) r.agent.action_skip = rl::default_action_skip(variant);
  if (!r.init_seed) r.init_seed = seed;
  r.network.init_seed = *r.init_seed;
  r.agent.max_episodes = episodes;
  std::sort(r.milestones.begin(), r.milestones.end());
  r.milestones.erase(std::unique(r.milestones.begin(), r.milestones.end()), r.milestones.end());
  return r;
}

void ExperimentConfig::validate() const {
  const ExperimentConfig r = resolved();
  r.env.validate();
  r.network.validate();
  r.optimizer.validate();
  r.agent.validate();
  if (r.episodes < 1) throw ConfigError("experiment.episodes must be >= 1");
  if (r.output_dir.empty()) throw ConfigError("experiment.output_dir must not be empty");
  if (r.eval_episodes < 1) throw ConfigError("experiment.eval_episodes must be >= 1");
  if (r.eval_workers < 1) throw ConfigError("experiment.eval_workers must be >= 1");
}

std::string ExperimentConfig::to_text() const {
  const ExperimentConfig r = resolved();
  std::ostringstream out;
  out << "# resolved configuration\n\n";
  out << "[experiment]\n"
      << "variant = " << rl::to_string(r.variant) << "\n"
      << "seed = " << r.seed << "\n"
      << "episodes = " << r.episodes << "\n"
      << "output_dir = " << r.output_dir << "\n"
      << "milestones = ";
  for (std::size_t i = 0; i < r.milestones.size(); ++i) out << (i ? ", " : "") << r.milestones[i];
  out << "\neval_episodes = " << r.eval_episodes << "\n"
      << "eval_workers = " << r.eval_workers << "\n\n";
  out << world::format_world_settings(r.env) << "\n";
  out << "[network]\n"
      << "seq_len = " << r.network.seq_len << "\n"
      << "tdl_units = " << r.network.tdl_units << "\n"
      << "gru_units = " << r.network.gru_units << "\n"
      << "fc1_units = " << r.network.fc1_units << "\n"
      << "ff_units = " << r.network.ff_units << "\n"
      << "init_scheme = " << neural::to_string(r.network.init_scheme) << "\n"
      << "init_seed = " << *r.init_seed << "\n\n";
  out << "[optimizer]\n"
      << "kind = " << neural::to_string(r.optimizer.kind) << "\n"
      << "learning_rate = " << format_double(r.optimizer.learning_rate) << "\n"
      << "beta1 = " << format_double(r.optimizer.beta1) << "\n"
      << "beta2 = " << format_double(r.optimizer.beta2) << "\n"
      << "epsilon = " << format_double(r.optimizer.epsilon) << "\n\n";
  const auto& a = r.agent;
  out << "[agent]\n"
      << "gamma = " << format_double(a.gamma) << "\n"
      << "batch_size = " << a.batch_size << "\n"
      << "target_update_interval = " << a.target_update_interval << "\n"
      << "epsilon_start = " << format_double(a.epsilon_start) << "\n"
      << "epsilon_decay = " << format_double(a.epsilon_decay) << "\n"
      << "epsilon_min = " << format_double(a.epsilon_min) << "\n"
      << "action_skip = " << a.action_skip << "\n"
      << "skip_gates_exploration = " << (a.skip_gates_exploration ? "true" : "false") << "\n"
      << "replay_capacity = " << a.replay_capacity << "\n"
      << "learning_start = " << a.learning_start << "\n"
      << "train_every = " << a.train_every << "\n"
      << "max_steps_per_episode = " << a.max_steps_per_episode << "\n";
  return out.str();
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig c;
  c.apply_text(text);
  return c;
}

}  // namespace navrl::harness
