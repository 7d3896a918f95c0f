#include "navrl/harness/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "navrl/config_text.hpp"
#include "navrl/random.hpp"
#include "navrl/rl/navigation_task.hpp"

#include <nlohmann/json.hpp>

namespace navrl::harness {

EvalSummary evaluate(const neural::QNetwork& net, const EvalSpec& spec) {
  world::EnvConfig env_cfg = spec.env;
  env_cfg.end_on_goal = true;
  env_cfg.validate();

  std::vector<rl::EpisodeRecord> records(spec.n_episodes);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < spec.n_episodes; i = next++) {
        rl::NavigationTask task(env_cfg, derive_seed(spec.seed, SeedStream::Evaluation, i));
        records[i] = rl::run_greedy_episode(task, net, spec.policy, spec.max_steps, i + 1);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = spec.n_episodes;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(spec.workers, 1, std::max<std::size_t>(spec.n_episodes, 1));
  if (workers == 1) {
    worker();
  } else {
    // Forward passes only read the network, so workers share it.
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return summarize(std::move(records));
}

EvalSummary summarize(std::vector<rl::EpisodeRecord> episodes) {
  EvalSummary s;
  s.n_episodes = episodes.size();
  std::size_t successes = 0;
  double time_sum = 0.0;
  for (const auto& e : episodes) {
    if (e.outcome != rl::EpisodeOutcome::Goal) continue;
    ++successes;
    time_sum += e.time_to_goal_s.value_or(e.sim_time_s);
  }
  if (s.n_episodes > 0)
    s.success_rate = static_cast<double>(successes) / static_cast<double>(s.n_episodes);
  if (successes > 0) s.avg_time_to_goal_s = time_sum / static_cast<double>(successes);
  s.episodes = std::move(episodes);
  return s;
}

std::string summary_to_json(const EvalSummary& s, const std::string& checkpoint_path) {
  nlohmann::ordered_json j;
  if (!checkpoint_path.empty()) j["checkpoint"] = checkpoint_path;
  j["n_episodes"] = s.n_episodes;
  j["success_rate"] = s.success_rate;
  if (s.avg_time_to_goal_s) j["avg_time_to_goal_s"] = *s.avg_time_to_goal_s;
  else j["avg_time_to_goal_s"] = nullptr;
  std::size_t collisions = 0, timeouts = 0;
  for (const auto& e : s.episodes) {
    collisions += e.outcome == rl::EpisodeOutcome::Collision;
    timeouts += e.outcome == rl::EpisodeOutcome::Timeout;
  }
  j["collisions"] = collisions;
  j["timeouts"] = timeouts;
  return j.dump(2) + "\n";
}

}  // namespace navrl::harness
