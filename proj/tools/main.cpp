#include <iostream>
#include <string>
#include <vector>

#include "navrl/harness/cli.hpp"
#include "navrl/runtime.hpp"

int main(int argc, char** argv) {
  navrl::tune_heap_for_training();
  std::vector<std::string> args(argv + 1, argv + argc);
  return navrl::harness::run_cli(args, std::cout, std::cerr);
}
