#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "navrl/neural/ndarray.hpp"
#include "navrl/neural/qnetwork.hpp"

namespace navrl::neural {

enum class OptimizerKind : std::uint8_t { Adam, Sgd };

std::string_view to_string(OptimizerKind k);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::Adam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

/// Bias-corrected Adam on flat buffers. `step` is the 1-based index of this update.
/// m and v are updated in place.
void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, std::uint64_t step, const OptimizerConfig& cfg);

/// Descent on a loss: params -= lr * grads (Adam or plain SGD).
class Optimizer {
 public:
  Optimizer(OptimizerConfig cfg, const Parameters& like);

  /// Throws TrainingDivergence on non-finite gradients; parameters are untouched then.
  void step(QNetwork& net, const Gradients& grads);
  void step(Parameters& params, const Gradients& grads);

  const OptimizerConfig& config() const { return config_; }
  std::uint64_t step_count() const { return step_count_; }

  /// Moment estimates in Parameters::for_each order. Empty for SGD.
  const std::vector<NdArray>& first_moments() const { return m_; }
  const std::vector<NdArray>& second_moments() const { return v_; }
  void restore(std::uint64_t step_count, std::vector<NdArray> m, std::vector<NdArray> v);

  friend bool operator==(const Optimizer&, const Optimizer&) = default;

 private:
  OptimizerConfig config_;
  std::uint64_t step_count_ = 0;
  std::vector<NdArray> m_;
  std::vector<NdArray> v_;
};

}  // namespace navrl::neural
