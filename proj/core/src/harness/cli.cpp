#include "navrl/harness/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <set>

#include "navrl/config_text.hpp"
#include "navrl/errors.hpp"
#include "navrl/harness/evaluation.hpp"
#include "navrl/harness/experiment_config.hpp"
#include "navrl/harness/files.hpp"
#include "navrl/harness/metrics.hpp"
#include "navrl/harness/rollout.hpp"
#include "navrl/neural/checkpoint.hpp"
#include "navrl/neural/gradient_check.hpp"
#include "navrl/rl/navigation_task.hpp"

#include <CLI11.hpp>

namespace navrl::harness {

namespace fs = std::filesystem;

namespace {

constexpr double kGradcheckTolerance = 1e-5;

const char* kUsage =
    "usage: navrl <verb> [options] [--section.key value ...]\n"
    "verbs:\n"
    "  train      --config PATH --variant V --episodes N --seed S --out DIR\n"
    "  eval       --checkpoint PATH --episodes N --seed S --workers W --out FILE\n"
    "  gradcheck  --config PATH --trials N --eps E --seed S [--inject-fault]\n"
    "  rollout    --checkpoint PATH --seed S --out FILE\n";

/// Raised for malformed command lines; maps to the invalid-input exit code.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HelpRequested {
  std::string text;
};

/// `--section.key value` / `--section.key=value` pairs left over after the named options.
std::vector<std::pair<std::string, std::string>> dotted_overrides(
    const std::vector<std::string>& rest) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const std::string& a = rest[i];
    if (a.rfind("--", 0) != 0) throw UsageError("unexpected argument '" + a + "'");
    std::string key = a.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.resize(eq);
    } else {
      if (i + 1 >= rest.size()) throw UsageError("missing value for '" + a + "'");
      value = rest[++i];
    }
    if (key.find('.') == std::string::npos) throw UsageError("unknown option '" + a + "'");
    out.emplace_back(key, value);
  }
  return out;
}

/// Parses `args` with `app` and returns the unmatched arguments.
std::vector<std::string> parse_with(CLI::App& app, std::vector<std::string> args) {
  app.allow_extras();
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help() + "  --section.key VALUE         override any config key\n"};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return app.remaining();
}

void apply_overrides(ExperimentConfig& cfg, const std::string& config_path,
                     const std::vector<std::pair<std::string, std::string>>& overrides) {
  if (!config_path.empty()) {
    const std::string text = read_file(config_path);
    try {
      cfg.apply_text(text);
    } catch (const ConfigError& e) {
      throw ConfigError(config_path + ": " + e.what());
    }
  }
  for (const auto& [k, v] : overrides) {
    try {
      cfg.apply(k, v);
    } catch (const ConfigError& e) {
      throw ConfigError("--" + k + ": " + e.what());
    }
  }
}

std::string checkpoint_name(std::size_t episode) {
  return "checkpoint_ep" + std::to_string(episode) + ".json";
}

neural::Checkpoint annotated(const rl::DqnAgent& agent, const ExperimentConfig& cfg) {
  auto ckpt = agent.checkpoint();
  ckpt.metadata["config"] = cfg.to_text();
  ckpt.metadata["seed"] = std::to_string(cfg.seed);
  return ckpt;
}

int cmd_train(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("navrl train");
  std::string config_path;
  std::optional<std::string> variant, out_dir;
  std::optional<std::size_t> episodes;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--variant", variant, "dqn | dqn-gru | dqn-gru-skip");
  app.add_option("--episodes", episodes, "training episodes");
  app.add_option("--seed", seed, "experiment seed");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--quiet", quiet, "no per-episode progress lines");
  const auto overrides = dotted_overrides(parse_with(app, args));

  ExperimentConfig cfg;
  apply_overrides(cfg, config_path, overrides);
  if (variant) cfg.variant = rl::parse_variant(*variant);
  if (episodes) cfg.episodes = *episodes;
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.output_dir = *out_dir;
  cfg.validate();
  cfg = cfg.resolved();

  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  write_file_atomic(dir / "config_resolved.ini", cfg.to_text());

  rl::DqnAgent agent(cfg.variant, cfg.agent, cfg.network, cfg.optimizer, cfg.seed);
  rl::NavigationTask env(cfg.env, derive_seed(cfg.seed, SeedStream::Environment));
  MetricsWriter metrics(dir / "metrics.csv");
  const std::set<std::size_t> milestones(cfg.milestones.begin(), cfg.milestones.end());

  const auto started = std::chrono::steady_clock::now();
  try {
    rl::train(agent, env, cfg.episodes, [&](const rl::EpisodeRecord& rec, const rl::DqnAgent& a) {
      metrics.write(rec);
      if (milestones.count(rec.episode))
        write_file_atomic(dir / checkpoint_name(rec.episode),
                          neural::save_checkpoint(annotated(a, cfg)));
      if (!quiet && (rec.episode % 100 == 0 || rec.episode == cfg.episodes))
        out << "episode " << rec.episode << " outcome " << rl::to_string(rec.outcome)
            << " reward " << rec.total_reward << " epsilon " << rec.epsilon << "\n";
    });
  } catch (const TrainingDivergence& e) {
    metrics.finish();
    write_file_atomic(dir / "checkpoint_diverged.json",
                      neural::save_checkpoint(annotated(agent, cfg)));
    err << "error: training diverged after " << agent.episodes_completed()
        << " episodes: " << e.what() << "\n";
    return kExitRuntimeFailure;
  }
  metrics.finish();
  write_file_atomic(dir / "checkpoint_final.json", neural::save_checkpoint(annotated(agent, cfg)));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  out << "trained " << cfg.episodes << " episodes (" << agent.env_steps() << " steps) in "
      << std::fixed << std::setprecision(1) << secs << " s -> " << dir.string() << "\n";
  return kExitOk;
}

struct LoadedCheckpoint {
  neural::QNetwork net;
  ExperimentConfig cfg;
  rl::SkipPolicy policy;
};

LoadedCheckpoint load_for_inference(
    const std::string& path, const std::string& config_path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  if (path.empty()) throw UsageError("--checkpoint is required");
  const auto ckpt = neural::load_checkpoint(read_file(path));
  ExperimentConfig cfg;
  if (auto it = ckpt.metadata.find("config"); it != ckpt.metadata.end()) cfg.apply_text(it->second);
  apply_overrides(cfg, config_path, overrides);
  cfg.validate();
  cfg = cfg.resolved();
  rl::SkipPolicy policy{cfg.agent.action_skip, cfg.agent.skip_gates_exploration};
  if (auto it = ckpt.metadata.find("action_skip"); it != ckpt.metadata.end())
    policy.action_skip = static_cast<int>(parse_int(it->second));
  if (auto it = ckpt.metadata.find("skip_gates_exploration"); it != ckpt.metadata.end())
    policy.skip_gates_exploration = parse_bool(it->second);
  auto net = neural::network_from_checkpoint(ckpt);
  if (net.config().obs_dim != cfg.env.world.lidar_beams + 2 ||
      net.config().n_actions != cfg.env.robot.angular_velocities.size())
    throw ConfigError("checkpoint network does not match the environment's observation/action sizes");
  return {std::move(net), std::move(cfg), policy};
}

int cmd_eval(const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  CLI::App app("navrl eval");
  std::string checkpoint, config_path, out_path;
  std::optional<std::size_t> episodes, workers;
  std::uint64_t seed = 0;
  app.add_option("--checkpoint", checkpoint, "checkpoint to evaluate");
  app.add_option("--config", config_path, "config keys applied over the checkpoint's");
  app.add_option("--episodes", episodes, "greedy evaluation episodes");
  app.add_option("--seed", seed, "evaluation seed");
  app.add_option("--workers", workers, "worker threads");
  app.add_option("--out", out_path, "summary JSON path (default: next to the checkpoint)");
  const auto overrides = dotted_overrides(parse_with(app, args));
  const auto loaded = load_for_inference(checkpoint, config_path, overrides);

  EvalSpec spec;
  spec.env = loaded.cfg.env;
  spec.policy = loaded.policy;
  spec.max_steps = loaded.cfg.agent.max_steps_per_episode;
  spec.n_episodes = episodes.value_or(loaded.cfg.eval_episodes);
  spec.seed = seed;
  spec.workers = workers.value_or(loaded.cfg.eval_workers);
  if (spec.n_episodes < 1) throw ConfigError("--episodes must be >= 1");
  const auto summary = evaluate(loaded.net, spec);
  const std::string json = summary_to_json(summary, checkpoint);
  if (out_path.empty()) out_path = (fs::path(checkpoint).parent_path() / "summary.json").string();
  write_file_atomic(out_path, json);
  out << json;
  return kExitOk;
}

int cmd_gradcheck(const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  CLI::App app("navrl gradcheck");
  std::string config_path;
  std::optional<std::string> variant;
  neural::GradientCheckOptions opts;
  bool inject_fault = false;
  app.add_option("--config", config_path, "key=value config file");
  app.add_option("--variant", variant, "network family to check");
  app.add_option("--trials", opts.trials, "sampled parameter coordinates");
  app.add_option("--eps", opts.epsilon, "central-difference step");
  app.add_option("--seed", opts.seed, "sampling seed");
  app.add_option("--floor", opts.denominator_floor, "relative-error denominator floor");
  app.add_flag("--inject-fault", inject_fault, "corrupt one gradient block (checker self-test)");
  const auto overrides = dotted_overrides(parse_with(app, args));

  ExperimentConfig cfg;
  apply_overrides(cfg, config_path, overrides);
  if (variant) cfg.variant = rl::parse_variant(*variant);
  cfg.validate();
  cfg = cfg.resolved();
  if (opts.trials < 1) throw ConfigError("--trials must be >= 1");
  if (!(opts.epsilon > 0.0)) throw ConfigError("--eps must be > 0");
  if (inject_fault) {
    // A 1% error in one weight block, as a broken backward pass would produce.
    opts.tamper = [](neural::Gradients& g) {
      auto& target = g.gru.empty() ? g.fc1.weight : g.gru.u_h;
      for (double& v : target.data()) v *= 1.01;
    };
  }
  const neural::QNetwork net(cfg.network);
  const auto started = std::chrono::steady_clock::now();
  const auto report = neural::gradient_check(net, opts);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  const bool pass = report.max_relative_error < kGradcheckTolerance;
  out << "parameters: " << net.parameters().count() << "\n"
      << "coordinates checked: " << report.coordinates_checked << "\n"
      << std::scientific << std::setprecision(3)
      << "max relative error: " << report.max_relative_error << " (" << report.worst_parameter
      << "[" << report.worst_index << "], analytic " << report.worst_analytic << ", numeric "
      << report.worst_numeric << ")\n"
      << "max absolute error: " << report.max_absolute_error << "\n"
      << std::fixed << std::setprecision(2) << "elapsed: " << secs << " s\n"
      << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitRuntimeFailure;
}

int cmd_rollout(const std::vector<std::string>& args, std::ostream& out, std::ostream&) {
  CLI::App app("navrl rollout");
  std::string checkpoint, config_path, out_path = "trajectory.csv";
  std::uint64_t seed = 0;
  app.add_option("--checkpoint", checkpoint, "checkpoint to roll out");
  app.add_option("--config", config_path, "config keys applied over the checkpoint's");
  app.add_option("--seed", seed, "rollout seed");
  app.add_option("--out", out_path, "trajectory CSV path");
  const auto overrides = dotted_overrides(parse_with(app, args));
  const auto loaded = load_for_inference(checkpoint, config_path, overrides);
  const auto rows = rollout(loaded.net, loaded.cfg.env, loaded.policy,
                            loaded.cfg.agent.max_steps_per_episode,
                            derive_seed(seed, SeedStream::Rollout));
  write_file_atomic(out_path, format_trajectory_csv(rows));
  out << rows.size() << " steps, final status "
      << (rows.empty() ? std::string_view("none") : world::to_string(rows.back().status)) << " -> "
      << out_path << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    (args.empty() ? err : out) << kUsage;
    return args.empty() ? kExitInvalidInput : kExitOk;
  }
  const std::string& verb = args[0];
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  try {
    if (verb == "train") return cmd_train(rest, out, err);
    if (verb == "eval") return cmd_eval(rest, out, err);
    if (verb == "gradcheck") return cmd_gradcheck(rest, out, err);
    if (verb == "rollout") return cmd_rollout(rest, out, err);
    err << "error: unknown verb '" << verb << "'\n" << kUsage;
    return kExitInvalidInput;
  } catch (const HelpRequested& h) {
    out << h.text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kUsage;
    return kExitInvalidInput;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const neural::CheckpointVersionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntimeFailure;
  }
}

}  // namespace navrl::harness
