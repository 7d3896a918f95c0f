#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "navrl/errors.hpp"
#include "navrl/world/geometry.hpp"
#include "navrl/world/kinematics.hpp"
#include "navrl/world/lidar.hpp"
#include "navrl/world/navigation_env.hpp"
#include "navrl/world/reward.hpp"
#include "oracles.hpp"

namespace navrl::world {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(WrapToPi, MapsIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_to_pi(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_to_pi(-kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_to_pi(3 * kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_to_pi(0.0), 0.0);
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double a = uniform(rng, -50.0, 50.0);
    const double w = wrap_to_pi(a);
    ASSERT_GT(w, -kPi);
    ASSERT_LE(w, kPi);
    const double turns = (a - w) / (2 * kPi);
    ASSERT_NEAR(turns, std::round(turns), 1e-9);
  }
}

TEST(Geometry, RaySegmentHitAndMiss) {
  const Segment wall{{1.0, -1.0}, {1.0, 1.0}};
  auto hit = ray_segment_hit({0.0, 0.0}, {1.0, 0.0}, wall);
  ASSERT_TRUE(hit);
  EXPECT_DOUBLE_EQ(*hit, 1.0);
  EXPECT_FALSE(ray_segment_hit({0.0, 0.0}, {-1.0, 0.0}, wall));
  EXPECT_FALSE(ray_segment_hit({0.0, 0.0}, {0.0, 1.0}, wall));  // parallel
  EXPECT_FALSE(ray_segment_hit({0.0, 2.0}, {1.0, 0.0}, wall));  // passes the end
}

TEST(Geometry, RayCircleHitFromOutsideAndInside) {
  const Circle c{{3.0, 0.0}, 1.0};
  auto hit = ray_circle_hit({0.0, 0.0}, {1.0, 0.0}, c);
  ASSERT_TRUE(hit);
  EXPECT_NEAR(*hit, 2.0, 1e-15);
  EXPECT_FALSE(ray_circle_hit({0.0, 0.0}, {-1.0, 0.0}, c));
  EXPECT_FALSE(ray_circle_hit({0.0, 5.0}, {1.0, 0.0}, c));
  EXPECT_EQ(*ray_circle_hit({3.2, 0.0}, {1.0, 0.0}, c), 0.0);
}

TEST(Geometry, DistanceToSegmentClampsToEndpoints) {
  const Segment s{{0.0, 0.0}, {1.0, 0.0}};
  EXPECT_DOUBLE_EQ(distance_to_segment({0.5, 2.0}, s), 2.0);
  EXPECT_DOUBLE_EQ(distance_to_segment({4.0, 4.0}, s), 5.0);
}

TEST(Kinematics, MatchesSubsteppedEuler) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Pose2D start{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -kPi, kPi)};
    const double v = uniform(rng, 0.0, 0.15);
    const double w = uniform(rng, -1.5, 1.5);
    const double dt = 0.2 * (1.0 - uniform01(rng));  // (0, 0.2]
    const Pose2D exact = step_kinematics(start, v, w, dt);
    const Pose2D ref = testing::euler_unicycle(start, v, w, dt, 10000);
    EXPECT_LE(std::hypot(exact.x - ref.x, exact.y - ref.y), 1e-6);
    EXPECT_LE(std::abs(wrap_to_pi(exact.yaw - ref.yaw)), 1e-8);
  }
}

TEST(Kinematics, StraightLineAndWrappedYaw) {
  const Pose2D p = step_kinematics({0, 0, 0}, 0.15, 0.0, 0.2);
  EXPECT_NEAR(p.x, 0.03, 1e-15);
  EXPECT_DOUBLE_EQ(p.y, 0.0);
  const Pose2D q = step_kinematics({0, 0, kPi - 0.01}, 0.1, 1.0, 0.2);
  EXPECT_NEAR(q.yaw, -kPi + 0.19, 1e-12);
}

TEST(Kinematics, ClosedFormExamples) {
  const Pose2D spin = step_kinematics({0, 0, 0}, 0.0, 1.5, 0.2);
  EXPECT_EQ(spin.x, 0.0);
  EXPECT_EQ(spin.y, 0.0);
  EXPECT_NEAR(spin.yaw, 0.3, 1e-15);
  // Reference values from 10^4-substep Euler integration.
  const Pose2D arc = step_kinematics({0, 0, 0}, 0.15, 0.75, 0.2);
  EXPECT_NEAR(arc.x, 0.0298876, 1e-6);
  EXPECT_NEAR(arc.y, 0.0022458, 1e-6);
  EXPECT_NEAR(arc.yaw, 0.15, 1e-15);
}

TEST(Kinematics, RejectsBadInput) {
  EXPECT_THROW(step_kinematics({0, 0, 0}, 0.1, 0.0, 0.0), InvalidStateError);
  EXPECT_THROW(step_kinematics({0, 0, 0}, NAN, 0.0, 0.2), InvalidStateError);
  EXPECT_THROW(step_kinematics({INFINITY, 0, 0}, 0.1, 0.0, 0.2), InvalidStateError);
}

TEST(Lidar, MatchesRayMarchingOracle) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const auto world = testing::random_arena(rng, i % 4);
    const auto pose = testing::random_free_pose(rng, world);
    const auto scan = cast_lidar(pose, world);
    const auto ref = testing::march_lidar(pose, world, 1e-4);
    ASSERT_EQ(scan.ranges.size(), world.lidar_beams);
    for (std::size_t k = 0; k < ref.size(); ++k) {
      EXPECT_NEAR(scan.ranges[k], ref[k], 5e-4) << "pose " << i << " beam " << k;
      EXPECT_GT(scan.ranges[k], 0.0);
      EXPECT_LE(scan.ranges[k], world.lidar_max_range);
    }
  }
}

TEST(Lidar, BeamZeroFollowsYaw) {
  const auto world = WorldConfig::walled_arena(4.0, 4.0);
  const auto scan = cast_lidar({0.5, 0.0, 0.0}, world);
  EXPECT_NEAR(scan.ranges[0], 1.5, 1e-12);
  EXPECT_NEAR(scan.ranges[6], 2.0, 1e-12);   // +90 degrees
  EXPECT_NEAR(scan.ranges[12], 2.5, 1e-12);  // behind
  EXPECT_NEAR(scan.min_range(), 1.5, 1e-12);
}

TEST(Lidar, MirrorSymmetry) {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    const auto world = testing::random_arena(rng, i % 4);
    const auto pose = testing::random_free_pose(rng, world);
    WorldConfig mirrored = world;
    const Rect& b = world.arena_bounds;
    mirrored.arena_bounds = {b.min_x, -b.max_y, b.max_x, -b.min_y};
    for (auto& s : mirrored.wall_segments) s = {{s.a.x, -s.a.y}, {s.b.x, -s.b.y}};
    for (auto& c : mirrored.circular_obstacles) c.center.y = -c.center.y;
    const auto scan = cast_lidar(pose, world).ranges;
    const auto flipped = cast_lidar({pose.x, -pose.y, -pose.yaw}, mirrored).ranges;
    const std::size_t n = scan.size();
    for (std::size_t k = 0; k < n; ++k)
      EXPECT_NEAR(flipped[(n - k) % n], scan[k], 1e-9) << "pose " << i << " beam " << k;
  }
}

TEST(Lidar, ClampsToMaxRangeAndRejectsOutsidePoses) {
  const auto world = WorldConfig::walled_arena(10.0, 10.0);
  for (double r : cast_lidar({0, 0, 0}, world).ranges) EXPECT_EQ(r, world.lidar_max_range);
  EXPECT_THROW(cast_lidar({6.0, 0.0, 0.0}, world), InvalidStateError);
}

TEST(Reward, CollisionAndGoalOverrideShaping) {
  EXPECT_EQ(compute_reward(0.0, 2, 1.0, 1.0, StepStatus::Collision), -100.0);
  EXPECT_EQ(compute_reward(0.3, 4, 0.1, 2.0, StepStatus::GoalReached), 200.0);
  RewardConfig progress;
  progress.mode = RewardMode::Progress;
  EXPECT_EQ(compute_reward(0.0, 2, 1.0, 1.0, StepStatus::Collision, progress, 1.2), -100.0);
}

TEST(Reward, ConcreteValues) {
  EXPECT_DOUBLE_EQ(compute_reward(0.0, 2, 1.3, 1.3, StepStatus::Running), 10.0);
  EXPECT_NEAR(compute_reward(kPi / 2, 2, 0.7, 1.3, StepStatus::Running), 0.0, 1e-15);
  // Turning at pi/4 towards a goal pi/4 to the left removes the error entirely.
  EXPECT_DOUBLE_EQ(alignment_reward(kPi / 4, 4), 5.0);
  EXPECT_DOUBLE_EQ(alignment_reward(kPi, 2), -5.0);
  EXPECT_DOUBLE_EQ(compute_reward(0.0, 2, 0.5, 2.0, StepStatus::Timeout), 2.5);
}

TEST(Reward, ProgressModeScalesDistanceGain) {
  RewardConfig cfg;
  cfg.mode = RewardMode::Progress;
  EXPECT_NEAR(compute_reward(1.0, 0, 0.97, 2.0, StepStatus::Running, cfg, 1.0), 3.0, 1e-12);
  EXPECT_NEAR(compute_reward(1.0, 0, 1.01, 2.0, StepStatus::Running, cfg, 1.0), -1.0, 1e-12);
}

TEST(Reward, AlignmentTermIsBounded) {
  Rng rng(5);
  for (int i = 0; i < 100000; ++i) {
    const double h = uniform(rng, -kPi, kPi);
    const int a = static_cast<int>(uniform_index(rng, 5));
    const double r = alignment_reward(h, a);
    ASSERT_GE(r, -5.0);
    ASSERT_LE(r, 5.0);
  }
}

TEST(Reward, RejectsInvalidArguments) {
  EXPECT_THROW(compute_reward(0.0, 2, 1.0, 0.0, StepStatus::Running), InvalidStateError);
  EXPECT_THROW(compute_reward(0.0, 5, 1.0, 1.0, StepStatus::Running), InvalidStateError);
  EXPECT_THROW(alignment_reward(0.0, -1), InvalidStateError);
}

GoalState goal_at(double x, double y) { return {{x, y}, 1.0}; }

TEST(Termination, CollisionBeatsGoalBeatsTimeout) {
  auto world = WorldConfig::walled_arena(4.0, 4.0);
  world.goal_radius = 0.3;
  const double r = 0.15;
  // Touching the wall while inside the goal disc and past the time limit.
  const Pose2D near_wall{1.9, 0.0, 0.0};
  EXPECT_EQ(check_termination(near_wall, world, goal_at(1.8, 0.0), r, 60.0, 50.0),
            StepStatus::Collision);
  const Pose2D free{0.0, 0.0, 0.0};
  EXPECT_EQ(check_termination(free, world, goal_at(0.1, 0.0), r, 60.0, 50.0),
            StepStatus::GoalReached);
  EXPECT_EQ(check_termination(free, world, goal_at(1.0, 0.0), r, 50.0, 50.0),
            StepStatus::Timeout);
  EXPECT_EQ(check_termination(free, world, goal_at(1.0, 0.0), r, 49.8, 50.0),
            StepStatus::Running);
  EXPECT_EQ(check_termination({2.5, 0.0, 0.0}, world, goal_at(1.0, 0.0), r, 0.0, 50.0),
            StepStatus::Collision);
}

TEST(Termination, ObstacleContact) {
  auto world = WorldConfig::walled_arena(4.0, 4.0);
  world.circular_obstacles.push_back({{1.0, 0.0}, 0.3});
  EXPECT_EQ(check_termination({0.56, 0.0, 0.0}, world, goal_at(-1, 0), 0.15, 0.0, 50.0),
            StepStatus::Collision);
  EXPECT_EQ(check_termination({0.54, 0.0, 0.0}, world, goal_at(-1, 0), 0.15, 0.0, 50.0),
            StepStatus::Running);
}

TEST(SpawnGoal, RespectsClearanceAndRobotDistance) {
  auto world = WorldConfig::walled_arena(4.0, 4.0);
  world.circular_obstacles.push_back({{1.0, 1.0}, 0.4});
  Rng rng(9);
  const Pose2D robot{0.0, 0.0, 0.0};
  for (int i = 0; i < 2000; ++i) {
    const auto g = spawn_goal(rng, world, robot);
    ASSERT_GE(min_obstacle_distance(g.position, world), world.goal_clearance);
    ASSERT_GE(g.initial_distance, world.goal_min_robot_distance);
    ASSERT_DOUBLE_EQ(g.initial_distance, distance_to_goal(robot, g.position));
  }
}

TEST(SpawnGoal, InfeasibleArenaThrows) {
  auto world = WorldConfig::walled_arena(0.5, 0.5);
  Rng rng(1);
  EXPECT_THROW(spawn_goal(rng, world, {0, 0, 0}), ConfigError);
}

TEST(Observation, LayoutAndNormalization) {
  EnvConfig cfg;
  NavigationEnv env(cfg, 4);
  const auto obs = env.reset();
  ASSERT_EQ(obs.values.size(), kObservationSize);
  for (std::size_t k = 0; k < 24; ++k) {
    EXPECT_GE(obs.values[k], 0.0);
    EXPECT_LE(obs.values[k], 1.0);
  }
  EXPECT_DOUBLE_EQ(obs.values[24], heading_error(env.pose(), env.goal().position) / kPi);
  EXPECT_DOUBLE_EQ(obs.values[25], env.goal().initial_distance / cfg.world.arena_bounds.diagonal());
}

TEST(Observation, StaysInBoundsAlongRandomEpisodes) {
  EnvConfig cfg;
  cfg.random_start = true;
  cfg.world.circular_obstacles = {{{0.9, 0.9}, 0.3}, {{-1.0, 0.4}, 0.2}};
  NavigationEnv env(cfg, 8);
  Rng rng(2);
  auto check = [](const Observation& obs) {
    ASSERT_EQ(obs.values.size(), kObservationSize);
    for (std::size_t k = 0; k < 24; ++k) {
      ASSERT_TRUE(std::isfinite(obs.values[k]));
      ASSERT_GT(obs.values[k], 0.0);
      ASSERT_LE(obs.values[k], 1.0);
    }
    ASSERT_GT(obs.values[24], -1.0);
    ASSERT_LE(obs.values[24], 1.0);
    ASSERT_GE(obs.values[25], 0.0);
    ASSERT_LE(obs.values[25], 1.0);
  };
  for (int episode = 0; episode < 40; ++episode) {
    check(env.reset());
    while (!env.done()) check(env.step(static_cast<int>(uniform_index(rng, 5))).observation);
  }
}

TEST(HeadingError, GoalRelative) {
  EXPECT_NEAR(heading_error({0, 0, 0}, {0.0, 1.0}), kPi / 2, 1e-15);
  EXPECT_NEAR(heading_error({0, 0, kPi / 2}, {1.0, 0.0}), -kPi / 2, 1e-15);
  EXPECT_DOUBLE_EQ(heading_error({0, 0, 0}, {-1.0, 0.0}), kPi);
  EXPECT_EQ(heading_error({1, 1, 0.3}, {1.0, 1.0}), 0.0);
}

TEST(NavigationEnv, SameSeedSameEpisode) {
  EnvConfig cfg;
  cfg.random_start = true;
  NavigationEnv a(cfg, 42), b(cfg, 42);
  ASSERT_EQ(a.reset(), b.reset());
  Rng rng(1);
  for (int t = 0; t < 250 && !a.done(); ++t) {
    const int action = static_cast<int>(uniform_index(rng, 5));
    ASSERT_EQ(a.step(action), b.step(action));
    ASSERT_EQ(a.pose(), b.pose());
  }
}

TEST(NavigationEnv, DrivingIntoWallCollides) {
  EnvConfig cfg;
  cfg.start_pose = {1.8, 0.0, 0.0};  // 0.2 m from the wall, facing it
  NavigationEnv env(cfg, 1);
  env.reset();
  auto out = env.step(2);
  EXPECT_EQ(out.status, StepStatus::Running);
  out = env.step(2);  // 0.14 m from the wall
  EXPECT_EQ(out.status, StepStatus::Collision);
  EXPECT_EQ(out.reward, -100.0);
  EXPECT_TRUE(env.done());
  EXPECT_THROW(env.step(2), ContractViolation);
}

TEST(NavigationEnv, TimesOutAtLimitWithoutCollision) {
  EnvConfig cfg;
  cfg.world = WorldConfig::walled_arena(4.0, 4.0);
  cfg.robot.linear_velocity = 1e-6;
  cfg.time_limit_s = 2.0;
  NavigationEnv env(cfg, 3);
  env.reset();
  StepOutcome out;
  int steps = 0;
  while (!env.done()) {
    out = env.step(0);
    ++steps;
  }
  EXPECT_EQ(steps, 10);
  EXPECT_EQ(out.status, StepStatus::Timeout);
}

TEST(NavigationEnv, GoalRespawnsDuringTrainingAndEndsInEvaluation) {
  EnvConfig cfg;
  cfg.world.goal_radius = 10.0;  // every step lands on the goal
  cfg.world.goal_min_robot_distance = 0.1;
  NavigationEnv train_env(cfg, 2);
  train_env.reset();
  const auto first_goal = train_env.goal();
  auto out = train_env.step(2);
  EXPECT_EQ(out.status, StepStatus::GoalReached);
  EXPECT_EQ(out.reward, 200.0);
  EXPECT_FALSE(train_env.done());
  EXPECT_NE(train_env.goal(), first_goal);
  cfg.end_on_goal = true;
  NavigationEnv eval_env(cfg, 2);
  eval_env.reset();
  eval_env.step(2);
  EXPECT_TRUE(eval_env.done());
  EXPECT_EQ(eval_env.goals_reached(), 1);
}

TEST(NavigationEnv, RewardUsesPreStepHeadingAndPostStepDistance) {
  EnvConfig cfg;
  NavigationEnv env(cfg, 8);
  env.reset();
  const double h = heading_error(env.pose(), env.goal().position);
  const auto out = env.step(3);
  if (out.status != StepStatus::Running) GTEST_SKIP();
  const double dc = distance_to_goal(env.pose(), env.goal().position);
  EXPECT_DOUBLE_EQ(out.reward, alignment_reward(h, 3) * 2.0 * dc / env.goal().initial_distance);
}

TEST(WorldConfig, ParsesAndRejectsKeys) {
  const auto cfg = parse_world_config("[arena]\nwidth = 5\nheight = 3\n[lidar]\nbeams = 24\n");
  EXPECT_DOUBLE_EQ(cfg.world.arena_bounds.width(), 5.0);
  EXPECT_DOUBLE_EQ(cfg.world.arena_bounds.height(), 3.0);
  try {
    parse_world_config("[arena]\nwidth = 5\nbogus = 1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  const auto round = parse_world_config(format_world_settings(cfg));
  EXPECT_EQ(round, cfg);
}

}  // namespace
}  // namespace navrl::world
