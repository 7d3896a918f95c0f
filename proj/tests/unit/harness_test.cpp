#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "navrl/errors.hpp"
#include "navrl/harness/cli.hpp"
#include "navrl/harness/evaluation.hpp"
#include "navrl/harness/experiment_config.hpp"
#include "navrl/harness/files.hpp"
#include "navrl/harness/metrics.hpp"
#include "navrl/harness/rollout.hpp"
#include "navrl/neural/checkpoint.hpp"
#include "navrl/rl/agent.hpp"
#include "navrl/rl/navigation_task.hpp"
#include "navrl/world/navigation_env.hpp"

namespace navrl::harness {
namespace {

namespace fs = std::filesystem;
using rl::EpisodeOutcome;
using rl::EpisodeRecord;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("navrl_" + std::string(info->test_suite_name()) + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST(ExperimentConfig, VariantDefaults) {
  ExperimentConfig cfg;
  cfg.variant = rl::AgentVariant::DqnGruSkip;
  EXPECT_EQ(cfg.resolved().agent.action_skip, 10);
  EXPECT_EQ(cfg.resolved().network.topology, neural::Topology::Recurrent);
  cfg.variant = rl::AgentVariant::DqnAlone;
  EXPECT_EQ(cfg.resolved().agent.action_skip, 1);
  EXPECT_EQ(cfg.resolved().network.topology, neural::Topology::FeedForward);
  cfg.seed = 9;
  EXPECT_EQ(cfg.resolved().network.init_seed, 9u);
  EXPECT_EQ(cfg.resolved().network.obs_dim, 26u);
}

TEST(ExperimentConfig, TextRoundTrip) {
  ExperimentConfig cfg;
  cfg.apply_text(
      "[experiment]\nvariant = dqn\nseed = 4\nmilestones = 3000, 500\n"
      "[arena]\nobstacles = 1 1 0.3; -1 0.5 0.2\n[reward]\nmode = progress\n"
      "[agent]\ngamma = 0.95\naction_skip = 3\n[optimizer]\nlearning_rate = 0.0005\n");
  const auto resolved = cfg.resolved();
  EXPECT_EQ(resolved.milestones, (std::vector<std::size_t>{500, 3000}));
  EXPECT_EQ(resolved.env.world.circular_obstacles.size(), 2u);
  EXPECT_EQ(resolved.agent.action_skip, 3);
  EXPECT_EQ(ExperimentConfig::parse(cfg.to_text()).resolved(), resolved);
  EXPECT_EQ(ExperimentConfig::parse(ExperimentConfig{}.to_text()).resolved(),
            ExperimentConfig{}.resolved());
}

TEST(ExperimentConfig, UnknownKeyReportsLine) {
  try {
    ExperimentConfig::parse("# comment\n[agent]\ngamma = 0.9\nbogus = 1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
  try {
    ExperimentConfig::parse("[agent]\nbatch_size = many\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ExperimentConfig::parse("[agent]\ngamma = 1.0\n").validate(), ConfigError);
  EXPECT_THROW(ExperimentConfig::parse("[experiment]\nvariant = ppo\n"), ConfigError);
}

EpisodeRecord record(std::size_t ep, EpisodeOutcome o, std::optional<double> ttg) {
  EpisodeRecord r;
  r.episode = ep;
  r.steps = 37;
  r.outcome = o;
  r.total_reward = -12.345678901234567;
  r.mean_max_q = 0.1 + 0.2;
  r.epsilon = 0.99;
  r.sim_time_s = 7.4;
  r.time_to_goal_s = ttg;
  return r;
}

TEST(Metrics, RowsRoundTripExactly) {
  for (const auto& r : {record(1, EpisodeOutcome::Goal, 7.4), record(2, EpisodeOutcome::Timeout, {})}) {
    const std::string row = format_metrics_row(r);
    EXPECT_EQ(std::count(row.begin(), row.end(), ','), 7);
    EXPECT_EQ(parse_metrics_row(row), r);
  }
  EXPECT_THROW(parse_metrics_row("1,2,goal"), ConfigError);
  EXPECT_THROW(parse_metrics_row("1,2,flying,0,0,0,0,"), ConfigError);
  EXPECT_THROW(parse_metrics_csv("episode,steps\n1,2\n"), ConfigError);
}

TEST(Metrics, WriterPublishesOnFinish) {
  TempDir dir;
  const auto path = dir / "metrics.csv";
  MetricsWriter w(path);
  w.write(record(1, EpisodeOutcome::Collision, {}));
  EXPECT_FALSE(fs::exists(path));
  w.write(record(2, EpisodeOutcome::Goal, 3.0));
  w.finish();
  ASSERT_TRUE(fs::exists(path));
  const auto rows = parse_metrics_csv(read_file(path));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].time_to_goal_s, 3.0);
  EXPECT_EQ(read_file(path).substr(0, kMetricsHeader.size()), kMetricsHeader);
}

TEST(Files, MissingFileIsConfigError) {
  EXPECT_THROW(read_file("/nonexistent/navrl/config.ini"), ConfigError);
}

TEST(Evaluation, SummaryCountsSuccessesOnly) {
  const auto s = summarize({record(1, EpisodeOutcome::Goal, 6.0), record(2, EpisodeOutcome::Goal, 8.0),
                            record(3, EpisodeOutcome::Collision, {}),
                            record(4, EpisodeOutcome::Timeout, {})});
  EXPECT_EQ(s.n_episodes, 4u);
  EXPECT_DOUBLE_EQ(s.success_rate, 0.5);
  EXPECT_DOUBLE_EQ(*s.avg_time_to_goal_s, 7.0);
  const std::string json = summary_to_json(s, "ck.json");
  for (const char* key : {"\"checkpoint\"", "\"n_episodes\"", "\"success_rate\"",
                          "\"avg_time_to_goal_s\"", "\"collisions\"", "\"timeouts\""})
    EXPECT_NE(json.find(key), std::string::npos) << key;
  EXPECT_FALSE(summarize({record(1, EpisodeOutcome::Timeout, {})}).avg_time_to_goal_s);
  EXPECT_NE(summary_to_json(summarize({record(1, EpisodeOutcome::Timeout, {})})).find("null"),
            std::string::npos);
}

neural::NetworkConfig eval_network() {
  neural::NetworkConfig n;
  n.tdl_units = n.gru_units = n.fc1_units = 16;
  n.init_seed = 5;
  return n;
}

/// A network that ignores its input and always prefers `action`.
neural::QNetwork constant_policy(int action) {
  auto cfg = eval_network();
  cfg.init_scheme = neural::InitScheme::Zeros;
  neural::QNetwork net(cfg);
  net.mutable_parameters().fc2.bias[static_cast<std::size_t>(action)] = 1.0;
  return net;
}

TEST(Evaluation, DeterministicAndWorkerCountInvariant) {
  const neural::QNetwork net(eval_network());
  EvalSpec spec;
  spec.n_episodes = 12;
  spec.seed = 3;
  spec.policy = {10, false};
  const auto serial = evaluate(net, spec);
  EXPECT_EQ(evaluate(net, spec), serial);
  spec.workers = 3;
  EXPECT_EQ(evaluate(net, spec), serial);
  for (std::size_t i = 0; i < serial.episodes.size(); ++i)
    EXPECT_EQ(serial.episodes[i].episode, i + 1);
}

TEST(Evaluation, CirclingPolicyNeverSucceeds) {
  EvalSpec spec;
  spec.n_episodes = 10;
  const auto s = evaluate(constant_policy(0), spec);  // tight circle around the start
  EXPECT_EQ(s.success_rate, 0.0);
  for (const auto& e : s.episodes) EXPECT_EQ(e.outcome, EpisodeOutcome::Timeout);
}

TEST(Evaluation, EndsAtFirstGoal) {
  EvalSpec spec;
  spec.n_episodes = 20;
  spec.env.world.goal_radius = 3.0;
  const auto s = evaluate(constant_policy(2), spec);
  EXPECT_EQ(s.success_rate, 1.0);
  for (const auto& e : s.episodes) EXPECT_EQ(e.steps, 1u);
}

TEST(Persistence, ReloadedCheckpointEvaluatesIdentically) {
  rl::AgentConfig acfg;
  acfg.batch_size = 16;
  acfg.learning_start = 16;
  acfg.max_steps_per_episode = 40;
  rl::DqnAgent agent(rl::AgentVariant::DqnGruSkip, acfg, eval_network(), {}, 2);
  rl::NavigationTask task(world::EnvConfig{}, 2);
  for (int e = 0; e < 3; ++e) agent.run_episode(task);
  const std::string saved = neural::save_checkpoint(agent.checkpoint());
  const auto reloaded = neural::network_from_checkpoint(neural::load_checkpoint(saved));
  EXPECT_EQ(neural::save_checkpoint(neural::load_checkpoint(saved)), saved);
  EvalSpec spec;
  spec.n_episodes = 10;
  spec.policy = agent.skip_policy();
  EXPECT_EQ(evaluate(reloaded, spec), evaluate(agent.online(), spec));
}

TEST(Rollout, ActionTraceReplaysBitExactly) {
  const neural::QNetwork net(eval_network());
  world::EnvConfig env;
  env.random_start = true;
  const auto rows = rollout(net, env, {1, false}, 250, 99);
  ASSERT_FALSE(rows.empty());
  env.end_on_goal = true;
  world::NavigationEnv replay(env, 99);
  replay.reset();
  for (const auto& row : rows) {
    const auto out = replay.step(row.action);
    ASSERT_EQ(replay.pose().x, row.x);
    ASSERT_EQ(replay.pose().y, row.y);
    ASSERT_EQ(replay.pose().yaw, row.yaw);
    ASSERT_EQ(out.reward, row.reward);
    ASSERT_EQ(out.status, row.status);
    ASSERT_EQ(world::distance_to_goal(replay.pose(), replay.goal().position), row.distance_to_goal);
    ASSERT_EQ(replay.scan().min_range(), row.min_scan);
  }
  EXPECT_TRUE(replay.done());
  EXPECT_EQ(parse_trajectory_csv(format_trajectory_csv(rows)), rows);
}

TEST(Cli, ExitCodesForBadInput) {
  EXPECT_EQ(cli({}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
  EXPECT_EQ(cli({"train", "--help"}).code, kExitOk);
  EXPECT_EQ(cli({"fly"}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"train", "--bogus", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"train", "--agent.bogus", "1"}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"train", "--agent.gamma", "2"}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"train", "--config", "/nonexistent/x.ini"}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"eval"}).code, kExitInvalidInput);
  EXPECT_EQ(cli({"rollout", "--checkpoint", "/nonexistent/c.json"}).code, kExitInvalidInput);
}

TEST(Cli, ConfigFileErrorNamesTheLine) {
  TempDir dir;
  std::ofstream(dir / "bad.ini") << "[agent]\ngamma = 0.9\n\nnope = 3\n";
  const auto r = cli({"train", "--config", (dir / "bad.ini").string()});
  EXPECT_EQ(r.code, kExitInvalidInput);
  EXPECT_NE(r.err.find("line 4"), std::string::npos) << r.err;
}

TEST(Cli, TrainEvalRolloutPipeline) {
  TempDir dir;
  const std::string run = (dir / "run").string();
  auto r = cli({"train", "--variant", "dqn-gru-skip", "--episodes", "1", "--seed", "3", "--out", run,
                "--quiet", "--experiment.milestones", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string metrics = read_file(dir / "run/metrics.csv");
  EXPECT_EQ(line_count(metrics), 2u);
  EXPECT_TRUE(fs::exists(dir / "run/checkpoint_ep1.json"));
  EXPECT_TRUE(fs::exists(dir / "run/config_resolved.ini"));
  const std::string ckpt = (dir / "run/checkpoint_final.json").string();

  const std::string ckpt_bytes = read_file(ckpt);
  r = cli({"eval", "--checkpoint", ckpt, "--episodes", "4", "--workers", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(read_file(ckpt), ckpt_bytes);
  EXPECT_NE(read_file(dir / "run/summary.json").find("\"n_episodes\": 4"), std::string::npos);

  const std::string traj = (dir / "trajectory.csv").string();
  r = cli({"rollout", "--checkpoint", ckpt, "--seed", "5", "--out", traj});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto rows = parse_trajectory_csv(read_file(traj));
  ASSERT_FALSE(rows.empty());
  EXPECT_LE(rows.size(), 250u);
  EXPECT_NE(rows.back().status, world::StepStatus::Running);
  EXPECT_EQ(read_file(traj).substr(0, kTrajectoryHeader.size()), kTrajectoryHeader);

  std::string text = read_file(ckpt);
  text.replace(text.find("\"format_version\":1"), 18, "\"format_version\":2");
  std::ofstream(dir / "future.json") << text;
  EXPECT_EQ(cli({"eval", "--checkpoint", (dir / "future.json").string()}).code, kExitInvalidInput);
}

TEST(Cli, CheckpointsOnlyAtMilestones) {
  TempDir dir;
  ASSERT_EQ(cli({"train", "--variant", "dqn", "--episodes", "5", "--out", dir.str(), "--quiet",
                 "--experiment.milestones", "4, 2"})
                .code,
            kExitOk);
  for (int e = 1; e <= 5; ++e)
    EXPECT_EQ(fs::exists(dir / ("checkpoint_ep" + std::to_string(e) + ".json")), e == 2 || e == 4)
        << e;
  EXPECT_TRUE(fs::exists(dir / "checkpoint_final.json"));
  EXPECT_EQ(parse_metrics_csv(read_file(dir / "metrics.csv")).size(), 5u);
}

TEST(Cli, TrainingIsReproducible) {
  TempDir dir;
  for (const char* name : {"a", "b"})
    ASSERT_EQ(cli({"train", "--variant", "dqn", "--episodes", "3", "--seed", "8", "--out",
                   (dir / name).string(), "--quiet"})
                  .code,
              kExitOk);
  EXPECT_EQ(read_file(dir / "a/metrics.csv"), read_file(dir / "b/metrics.csv"));
}

TEST(Cli, DivergenceExitsWithRuntimeFailure) {
  TempDir dir;
  const auto r = cli({"train", "--variant", "dqn", "--episodes", "5", "--out", dir.str(), "--quiet",
                      "--optimizer.kind", "sgd", "--optimizer.learning_rate", "1e300",
                      "--agent.batch_size", "8", "--agent.learning_start", "8"});
  EXPECT_EQ(r.code, kExitRuntimeFailure) << r.out << r.err;
  EXPECT_TRUE(fs::exists(dir / "checkpoint_diverged.json"));
}

TEST(Cli, GradcheckPassesAndDetectsFault) {
  auto r = cli({"gradcheck", "--trials", "200"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  r = cli({"gradcheck", "--inject-fault"});
  EXPECT_EQ(r.code, kExitRuntimeFailure);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace navrl::harness
