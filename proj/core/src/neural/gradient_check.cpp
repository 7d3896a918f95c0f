#include "navrl/neural/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "navrl/errors.hpp"
#include "navrl/random.hpp"

namespace navrl::neural {

namespace {

double standard_normal(Rng& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double contracted_output(const QNetwork& net, const NdArray& window, const NdArray& cotangent) {
  const auto q = forward_q(net, window).q;
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += cotangent[i] * q[i];
  return s;
}

std::vector<NdArray*> arrays_of(Parameters& p, std::vector<std::string>* names = nullptr) {
  std::vector<NdArray*> out;
  p.for_each([&](std::string_view name, NdArray& a) {
    out.push_back(&a);
    if (names) names->emplace_back(name);
  });
  return out;
}

}  // namespace

GradientCheckReport gradient_check(const QNetwork& net, const GradientCheckOptions& options) {
  if (options.trials < 1) throw ContractViolation("gradient_check: trials must be >= 1");
  const auto& cfg = net.config();
  Rng rng(options.seed);

  NdArray window({cfg.seq_len, cfg.obs_dim});
  for (double& v : window.data()) v = standard_normal(rng);
  NdArray cotangent({cfg.n_actions});
  for (double& v : cotangent.data()) v = standard_normal(rng);

  QNetwork probe = net;
  const auto fwd = forward_q(probe, window);
  Gradients analytic = backward_q(probe, fwd.cache, cotangent);
  if (options.tamper) options.tamper(analytic);

  std::vector<std::string> names;
  auto grad_arrays = arrays_of(analytic);
  auto param_arrays = arrays_of(probe.mutable_parameters(), &names);

  GradientCheckReport report;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const std::size_t which = trial % param_arrays.size();
    NdArray& param = *param_arrays[which];
    const std::size_t idx = static_cast<std::size_t>(uniform_index(rng, param.size()));

    const double saved = param[idx];
    param[idx] = saved + options.epsilon;
    const double plus = contracted_output(probe, window, cotangent);
    param[idx] = saved - options.epsilon;
    const double minus = contracted_output(probe, window, cotangent);
    param[idx] = saved;

    const double numeric = (plus - minus) / (2.0 * options.epsilon);
    const double a = (*grad_arrays[which])[idx];
    const double denom = std::max({std::abs(a), std::abs(numeric), options.denominator_floor});
    const double rel = std::abs(a - numeric) / denom;
    ++report.coordinates_checked;
    report.max_absolute_error = std::max(report.max_absolute_error, std::abs(a - numeric));
    if (rel > report.max_relative_error || report.worst_parameter.empty()) {
      report.max_relative_error = rel;
      report.worst_parameter = names[which];
      report.worst_index = idx;
      report.worst_analytic = a;
      report.worst_numeric = numeric;
    }
  }
  return report;
}

}  // namespace navrl::neural
