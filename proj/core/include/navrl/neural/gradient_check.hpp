#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "navrl/neural/qnetwork.hpp"

namespace navrl::neural {

struct GradientCheckOptions {
  std::size_t trials = 200;  // sampled parameter coordinates
  double epsilon = 1e-5;     // central-difference step
  std::uint64_t seed = 0;
  /// Relative error is |a - n| / max(|a|, |n|, denominator_floor).
  double denominator_floor = 1e-8;
  /// Applied to the analytic gradients before comparison; used to check that
  /// the checker catches broken backward passes.
  std::function<void(Gradients&)> tamper;
};

struct GradientCheckReport {
  double max_relative_error = 0.0;
  double max_absolute_error = 0.0;
  std::string worst_parameter;
  std::size_t worst_index = 0;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t coordinates_checked = 0;
};

/// Compares backward_q against central differences of L = sum(c * q) for a random
/// window and random cotangent c. Coordinates are drawn round-robin over the
/// parameter arrays so every array is exercised.
GradientCheckReport gradient_check(const QNetwork& net, const GradientCheckOptions& options = {});

}  // namespace navrl::neural
