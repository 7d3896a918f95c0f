#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace navrl::harness {

enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 1, kExitRuntimeFailure = 2 };

/// Entry point behind the `navrl` executable. args excludes the program name.
/// Verbs: train, eval, gradcheck, rollout.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace navrl::harness
