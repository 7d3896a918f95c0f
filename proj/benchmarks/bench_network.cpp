#include <benchmark/benchmark.h>

#include "navrl/neural/optimizer.hpp"
#include "navrl/neural/qnetwork.hpp"
#include "navrl/random.hpp"
#include "navrl/rl/learner.hpp"
#include "navrl/rl/replay_buffer.hpp"

namespace {

using navrl::neural::NdArray;

NdArray random_array(std::vector<std::size_t> shape, navrl::Rng& rng) {
  NdArray a(std::move(shape));
  for (double& v : a.data()) v = navrl::uniform(rng, -1.0, 1.0);
  return a;
}

navrl::neural::NetworkConfig config_for(bool recurrent) {
  navrl::neural::NetworkConfig c;
  c.topology = recurrent ? navrl::neural::Topology::Recurrent : navrl::neural::Topology::FeedForward;
  return c;
}

void BM_ForwardSingle(benchmark::State& state) {
  const navrl::neural::QNetwork net(config_for(state.range(0) != 0));
  navrl::Rng rng(1);
  const auto window = random_array({4, 26}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(navrl::neural::forward_q(net, window).q);
}
BENCHMARK(BM_ForwardSingle)->Arg(1)->Arg(0);

void BM_ForwardBatch(benchmark::State& state) {
  const navrl::neural::QNetwork net(config_for(true));
  navrl::Rng rng(1);
  const auto window = random_array({static_cast<std::size_t>(state.range(0)), 4, 26}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(navrl::neural::forward_q(net, window).q);
}
BENCHMARK(BM_ForwardBatch)->Arg(64);

void BM_ForwardBackwardBatch(benchmark::State& state) {
  const navrl::neural::QNetwork net(config_for(true));
  navrl::Rng rng(1);
  const auto window = random_array({64, 4, 26}, rng);
  const auto dq = random_array({64, 5}, rng);
  for (auto _ : state) {
    const auto f = navrl::neural::forward_q(net, window);
    benchmark::DoNotOptimize(navrl::neural::backward_q(net, f.cache, dq));
  }
}
BENCHMARK(BM_ForwardBackwardBatch);

void BM_TrainStep(benchmark::State& state) {
  const bool recurrent = state.range(0) != 0;
  navrl::neural::QNetwork online(config_for(recurrent));
  navrl::neural::QNetwork target(online);
  navrl::neural::Optimizer opt({}, online.parameters());
  navrl::rl::ReplayBuffer buffer(10000, 3);
  navrl::Rng rng(2);
  for (int i = 0; i < 1000; ++i)
    buffer.push({random_array({4, 26}, rng), i % 5, 0.5, random_array({4, 26}, rng), i % 17 == 0});
  navrl::rl::AgentConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(navrl::rl::train_step(online, target, buffer, opt, cfg));
}
BENCHMARK(BM_TrainStep)->Arg(1)->Arg(0)->Unit(benchmark::kMicrosecond);

}  // namespace
