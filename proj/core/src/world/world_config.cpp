#include "navrl/world/world_config.hpp"

#include <sstream>

#include "navrl/config_text.hpp"
#include "navrl/errors.hpp"

namespace navrl::world {

std::vector<Segment> WorldConfig::boundary_walls(const Rect& r) {
  const Vec2 a{r.min_x, r.min_y}, b{r.max_x, r.min_y}, c{r.max_x, r.max_y}, d{r.min_x, r.max_y};
  return {{a, b}, {b, c}, {c, d}, {d, a}};
}

WorldConfig WorldConfig::walled_arena(double width, double height) {
  WorldConfig w;
  w.arena_bounds = Rect{-0.5 * width, -0.5 * height, 0.5 * width, 0.5 * height};
  w.wall_segments = boundary_walls(w.arena_bounds);
  return w;
}

void WorldConfig::validate(double body_radius) const {
  if (!(arena_bounds.width() > 0.0) || !(arena_bounds.height() > 0.0))
    throw ConfigError("arena must have positive width and height");
  if (lidar_beams < 3) throw ConfigError("lidar.beams must be >= 3");
  if (!(lidar_max_range > body_radius))
    throw ConfigError("lidar.max_range must exceed robot.body_radius");
  if (!(goal_radius > 0.0)) throw ConfigError("goal.radius must be > 0");
  if (goal_clearance < 0.0) throw ConfigError("goal.clearance must be >= 0");
  for (const auto& c : circular_obstacles) {
    if (!(c.radius > 0.0)) throw ConfigError("obstacle radius must be > 0");
    const Rect& r = arena_bounds;
    if (c.center.x - c.radius < r.min_x || c.center.x + c.radius > r.max_x ||
        c.center.y - c.radius < r.min_y || c.center.y + c.radius > r.max_y)
      throw ConfigError("obstacle lies outside the arena");
  }
  for (const auto& s : wall_segments)
    if (!arena_bounds.contains(s.a) || !arena_bounds.contains(s.b))
      throw ConfigError("wall segment lies outside the arena");
}

void EnvConfig::validate() const {
  robot.validate();
  world.validate(robot.body_radius);
  if (!(time_limit_s > 0.0)) throw ConfigError("arena.time_limit_s must be > 0");
  if (!world.arena_bounds.contains({start_pose.x, start_pose.y}))
    throw ConfigError("start pose lies outside the arena");
}

namespace {

std::vector<Segment> interior_walls(const WorldConfig& w) {
  if (w.wall_segments.size() <= 4) return {};
  return {w.wall_segments.begin() + 4, w.wall_segments.end()};
}

void rebuild_walls(WorldConfig& w, const std::vector<Segment>& interior) {
  w.wall_segments = WorldConfig::boundary_walls(w.arena_bounds);
  w.wall_segments.insert(w.wall_segments.end(), interior.begin(), interior.end());
}

}  // namespace

bool apply_world_setting(EnvConfig& cfg, std::string_view key, std::string_view value,
                         std::size_t line) {
  auto& w = cfg.world;
  auto& r = cfg.robot;
  if (key == "arena.width" || key == "arena.height") {
    const double size = parse_double(value, line);
    if (!(size > 0.0)) throw ConfigError(std::string(key) + " must be > 0", line);
    const auto interior = interior_walls(w);
    if (key == "arena.width") {
      w.arena_bounds.min_x = -0.5 * size;
      w.arena_bounds.max_x = 0.5 * size;
    } else {
      w.arena_bounds.min_y = -0.5 * size;
      w.arena_bounds.max_y = 0.5 * size;
    }
    rebuild_walls(w, interior);
  } else if (key == "arena.segments") {
    std::vector<Segment> interior;
    for (const auto& g : parse_groups(value, 4, line))
      interior.push_back({{g[0], g[1]}, {g[2], g[3]}});
    rebuild_walls(w, interior);
  } else if (key == "arena.obstacles") {
    w.circular_obstacles.clear();
    for (const auto& g : parse_groups(value, 3, line))
      w.circular_obstacles.push_back({{g[0], g[1]}, g[2]});
  } else if (key == "arena.time_limit_s") {
    cfg.time_limit_s = parse_double(value, line);
  } else if (key == "robot.linear_velocity") {
    r.linear_velocity = parse_double(value, line);
  } else if (key == "robot.control_dt") {
    r.control_dt = parse_double(value, line);
  } else if (key == "robot.body_radius") {
    r.body_radius = parse_double(value, line);
  } else if (key == "robot.angular_velocities") {
    r.angular_velocities = parse_double_list(value, line);
  } else if (key == "robot.start_x") {
    cfg.start_pose.x = parse_double(value, line);
  } else if (key == "robot.start_y") {
    cfg.start_pose.y = parse_double(value, line);
  } else if (key == "robot.start_yaw") {
    cfg.start_pose.yaw = parse_double(value, line);
  } else if (key == "robot.random_start") {
    cfg.random_start = parse_bool(value, line);
  } else if (key == "lidar.beams") {
    w.lidar_beams = parse_uint(value, line);
  } else if (key == "lidar.max_range") {
    w.lidar_max_range = parse_double(value, line);
  } else if (key == "reward.mode") {
    const auto v = trim(value);
    if (v == "literal") cfg.reward.mode = RewardMode::Literal;
    else if (v == "progress") cfg.reward.mode = RewardMode::Progress;
    else throw ConfigError("reward.mode must be literal or progress", line);
  } else if (key == "reward.collision_penalty") {
    cfg.reward.collision_penalty = parse_double(value, line);
  } else if (key == "reward.goal_reward") {
    cfg.reward.goal_reward = parse_double(value, line);
  } else if (key == "reward.progress_scale") {
    cfg.reward.progress_scale = parse_double(value, line);
  } else if (key == "goal.radius") {
    w.goal_radius = parse_double(value, line);
  } else if (key == "goal.clearance") {
    w.goal_clearance = parse_double(value, line);
  } else if (key == "goal.min_robot_distance") {
    w.goal_min_robot_distance = parse_double(value, line);
  } else if (key == "goal.end_on_reach") {
    cfg.end_on_goal = parse_bool(value, line);
  } else {
    return false;
  }
  return true;
}

std::string format_world_settings(const EnvConfig& cfg) {
  const auto& w = cfg.world;
  const auto& r = cfg.robot;
  std::ostringstream out;
  out << "[arena]\n"
      << "width = " << format_double(w.arena_bounds.width()) << "\n"
      << "height = " << format_double(w.arena_bounds.height()) << "\n";
  out << "segments = ";
  const auto interior = interior_walls(w);
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const auto& s = interior[i];
    out << (i ? "; " : "") << format_double_list({s.a.x, s.a.y, s.b.x, s.b.y});
  }
  out << "\nobstacles = ";
  for (std::size_t i = 0; i < w.circular_obstacles.size(); ++i) {
    const auto& c = w.circular_obstacles[i];
    out << (i ? "; " : "") << format_double_list({c.center.x, c.center.y, c.radius});
  }
  out << "\ntime_limit_s = " << format_double(cfg.time_limit_s) << "\n\n";
  out << "[robot]\n"
      << "linear_velocity = " << format_double(r.linear_velocity) << "\n"
      << "control_dt = " << format_double(r.control_dt) << "\n"
      << "body_radius = " << format_double(r.body_radius) << "\n"
      << "angular_velocities = " << format_double_list(r.angular_velocities) << "\n"
      << "start_x = " << format_double(cfg.start_pose.x) << "\n"
      << "start_y = " << format_double(cfg.start_pose.y) << "\n"
      << "start_yaw = " << format_double(cfg.start_pose.yaw) << "\n"
      << "random_start = " << (cfg.random_start ? "true" : "false") << "\n\n";
  out << "[lidar]\n"
      << "beams = " << w.lidar_beams << "\n"
      << "max_range = " << format_double(w.lidar_max_range) << "\n\n";
  out << "[reward]\n"
      << "mode = " << (cfg.reward.mode == RewardMode::Literal ? "literal" : "progress") << "\n"
      << "collision_penalty = " << format_double(cfg.reward.collision_penalty) << "\n"
      << "goal_reward = " << format_double(cfg.reward.goal_reward) << "\n"
      << "progress_scale = " << format_double(cfg.reward.progress_scale) << "\n\n";
  out << "[goal]\n"
      << "radius = " << format_double(w.goal_radius) << "\n"
      << "clearance = " << format_double(w.goal_clearance) << "\n"
      << "min_robot_distance = " << format_double(w.goal_min_robot_distance) << "\n"
      << "end_on_reach = " << (cfg.end_on_goal ? "true" : "false") << "\n";
  return out.str();
}

EnvConfig parse_world_config(std::string_view text) {
  EnvConfig cfg;
  for (const auto& e : parse_kv_text(text))
    if (!apply_world_setting(cfg, e.key, e.value, e.line))
      throw ConfigError("unknown key '" + e.key + "'", e.line);
  cfg.validate();
  return cfg;
}

}  // namespace navrl::world
