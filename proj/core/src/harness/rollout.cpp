#include "navrl/harness/rollout.hpp"

#include <sstream>

#include "navrl/config_text.hpp"
#include "navrl/errors.hpp"
#include "navrl/rl/agent.hpp"
#include "navrl/rl/navigation_task.hpp"

namespace navrl::harness {

std::vector<RolloutRow> rollout(const neural::QNetwork& net, world::EnvConfig env,
                                const rl::SkipPolicy& policy, std::size_t max_steps,
                                std::uint64_t seed) {
  env.end_on_goal = true;
  env.validate();
  rl::NavigationTask task(std::move(env), seed);
  std::vector<RolloutRow> rows;
  rl::run_greedy_episode(task, net, policy, max_steps, 1,
                         [&](std::size_t t, int action, const rl::EnvTransition& tr) {
                           const auto& e = task.env();
                           RolloutRow row;
                           row.t = t;
                           row.x = e.pose().x;
                           row.y = e.pose().y;
                           row.yaw = e.pose().yaw;
                           row.action = action;
                           row.reward = tr.reward;
                           row.distance_to_goal = world::distance_to_goal(e.pose(), e.goal().position);
                           row.min_scan = e.scan().min_range();
                           row.status = tr.status;
                           rows.push_back(row);
                         });
  return rows;
}

std::string format_trajectory_csv(const std::vector<RolloutRow>& rows) {
  std::ostringstream out;
  out << kTrajectoryHeader << '\n';
  for (const auto& r : rows) {
    out << r.t << ',' << format_double(r.x) << ',' << format_double(r.y) << ','
        << format_double(r.yaw) << ',' << r.action << ',' << format_double(r.reward) << ','
        << format_double(r.distance_to_goal) << ',' << format_double(r.min_scan) << ','
        << world::to_string(r.status) << '\n';
  }
  return out.str();
}

namespace {

world::StepStatus parse_status(std::string_view s, std::size_t line) {
  using world::StepStatus;
  for (auto st : {StepStatus::Running, StepStatus::GoalReached, StepStatus::Collision,
                  StepStatus::Timeout})
    if (world::to_string(st) == s) return st;
  throw ConfigError("unknown status '" + std::string(s) + "'", line);
}

}  // namespace

std::vector<RolloutRow> parse_trajectory_csv(std::string_view text) {
  std::vector<RolloutRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != kTrajectoryHeader) throw ConfigError("unexpected trajectory header", 1);
      continue;
    }
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    if (f.size() != 9) throw ConfigError("trajectory row must have 9 fields", line_no);
    RolloutRow r;
    r.t = static_cast<std::size_t>(parse_uint(f[0], line_no));
    r.x = parse_double(f[1], line_no);
    r.y = parse_double(f[2], line_no);
    r.yaw = parse_double(f[3], line_no);
    r.action = static_cast<int>(parse_int(f[4], line_no));
    r.reward = parse_double(f[5], line_no);
    r.distance_to_goal = parse_double(f[6], line_no);
    r.min_scan = parse_double(f[7], line_no);
    r.status = parse_status(f[8], line_no);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace navrl::harness
