#include <benchmark/benchmark.h>

#include "navrl/runtime.hpp"

int main(int argc, char** argv) {
  navrl::tune_heap_for_training();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
