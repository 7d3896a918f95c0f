#include "navrl/neural/optimizer.hpp"

#include <cmath>

#include <Eigen/Core>

#include "navrl/errors.hpp"

namespace navrl::neural {

std::string_view to_string(OptimizerKind k) { return k == OptimizerKind::Adam ? "adam" : "sgd"; }

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("optimizer.learning_rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw ConfigError("optimizer.beta1 must be in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("optimizer.beta2 must be in [0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("optimizer.epsilon must be > 0");
}

void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                 std::span<double> v, std::uint64_t step, const OptimizerConfig& cfg) {
  if (grads.size() != params.size() || m.size() != params.size() || v.size() != params.size())
    throw DimensionError("adam_update: buffer sizes differ");
  if (step == 0) throw ContractViolation("adam_update: step index is 1-based");
  const double t = static_cast<double>(step);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  using Vec = Eigen::Map<Eigen::ArrayXd>;
  const auto n = static_cast<Eigen::Index>(params.size());
  Vec p(params.data(), n), mm(m.data(), n), vv(v.data(), n);
  const Eigen::Map<const Eigen::ArrayXd> g(grads.data(), n);
  mm = cfg.beta1 * mm + (1.0 - cfg.beta1) * g;
  vv = cfg.beta2 * vv + (1.0 - cfg.beta2) * g.square();
  p -= cfg.learning_rate * (mm / c1) / ((vv / c2).sqrt() + cfg.epsilon);
}

Optimizer::Optimizer(OptimizerConfig cfg, const Parameters& like) : config_(cfg) {
  config_.validate();
  if (config_.kind == OptimizerKind::Adam) {
    like.for_each([&](std::string_view, const NdArray& a) {
      m_.emplace_back(a.shape());
      v_.emplace_back(a.shape());
    });
  }
}

void Optimizer::step(QNetwork& net, const Gradients& grads) { step(net.mutable_parameters(), grads); }

void Optimizer::step(Parameters& params, const Gradients& grads) {
  std::vector<std::span<const double>> g;
  grads.for_each([&](std::string_view, const NdArray& a) { g.push_back(a.data()); });
  std::vector<std::span<double>> p;
  params.for_each([&](std::string_view, NdArray& a) { p.push_back(a.data()); });
  if (g.size() != p.size()) throw DimensionError("Optimizer::step: gradient layout mismatch");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != p[i].size()) throw DimensionError("Optimizer::step: gradient shape mismatch");
    if (!Eigen::Map<const Eigen::ArrayXd>(g[i].data(), static_cast<Eigen::Index>(g[i].size()))
             .allFinite())
      throw TrainingDivergence("non-finite gradient");
  }

  ++step_count_;
  if (config_.kind == OptimizerKind::Sgd) {
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g[i].size(); ++j) p[i][j] -= config_.learning_rate * g[i][j];
    return;
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    adam_update(p[i], g[i], m_[i].data(), v_[i].data(), step_count_, config_);
}

void Optimizer::restore(std::uint64_t step_count, std::vector<NdArray> m, std::vector<NdArray> v) {
  if (m.size() != m_.size() || v.size() != v_.size())
    throw DimensionError("Optimizer::restore: moment layout mismatch");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].shape() != m_[i].shape() || v[i].shape() != v_[i].shape())
      throw DimensionError("Optimizer::restore: moment shape mismatch");
  }
  step_count_ = step_count;
  m_ = std::move(m);
  v_ = std::move(v);
}

}  // namespace navrl::neural
