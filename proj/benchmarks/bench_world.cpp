#include <benchmark/benchmark.h>

#include "navrl/random.hpp"
#include "navrl/world/lidar.hpp"
#include "navrl/world/navigation_env.hpp"

namespace {

void BM_LidarScan(benchmark::State& state) {
  navrl::world::WorldConfig world;
  world.circular_obstacles = {{{0.8, 0.5}, 0.3}, {{-1.0, -0.7}, 0.25}, {{0.2, -1.2}, 0.2}};
  const navrl::world::Pose2D pose{0.1, 0.2, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(navrl::world::cast_lidar(pose, world));
}
BENCHMARK(BM_LidarScan);

void BM_EnvStep(benchmark::State& state) {
  navrl::world::NavigationEnv env(navrl::world::EnvConfig{}, 5);
  env.reset();
  navrl::Rng rng(9);
  for (auto _ : state) {
    if (env.done()) env.reset();
    benchmark::DoNotOptimize(env.step(static_cast<int>(navrl::uniform_index(rng, 5))));
  }
}
BENCHMARK(BM_EnvStep);

}  // namespace
