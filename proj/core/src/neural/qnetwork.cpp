#include "navrl/neural/qnetwork.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "eigen_views.hpp"
#include "navrl/errors.hpp"
#include "navrl/random.hpp"

namespace navrl::neural {

using detail::as_matrix;

std::string_view to_string(Topology t) {
  return t == Topology::Recurrent ? "recurrent" : "feedforward";
}

std::string_view to_string(InitScheme s) {
  return s == InitScheme::GlorotUniform ? "glorot_uniform" : "zeros";
}

namespace {

std::size_t recurrent_count(const NetworkConfig& c) {
  const std::size_t tdl = c.obs_dim * c.tdl_units + c.tdl_units;
  const std::size_t gru = 3 * (c.gru_units * c.tdl_units + c.gru_units * c.gru_units + c.gru_units);
  const std::size_t fc1 = c.gru_units * c.fc1_units + c.fc1_units;
  const std::size_t fc2 = c.fc1_units * c.n_actions + c.n_actions;
  return tdl + gru + fc1 + fc2;
}

std::size_t feedforward_count(const NetworkConfig& c, std::size_t w) {
  const std::size_t in = c.obs_dim * c.seq_len;
  return in * w + w + w * w + w + w * c.n_actions + c.n_actions;
}

std::atomic<std::uint64_t> next_instance{1};

}  // namespace

void NetworkConfig::validate() const {
  if (seq_len < 1) throw ConfigError("network.seq_len must be >= 1");
  if (obs_dim < 1 || tdl_units < 1 || gru_units < 1 || fc1_units < 1 || n_actions < 1)
    throw ConfigError("network unit counts must be >= 1");
}

std::size_t NetworkConfig::resolved_ff_units() const {
  if (ff_units != 0) return ff_units;
  const std::size_t target = recurrent_count(*this);
  std::size_t w = 1;
  while (feedforward_count(*this, w) < target) ++w;
  return w;
}

std::size_t Parameters::count() const {
  std::size_t n = 0;
  for_each([&](std::string_view, const NdArray& a) { n += a.size(); });
  return n;
}

bool Parameters::all_finite() const {
  bool ok = true;
  for_each([&](std::string_view, const NdArray& a) { ok = ok && a.all_finite(); });
  return ok;
}

Gradients Gradients::zeros_like(const Parameters& p) {
  Gradients g;
  static_cast<Parameters&>(g) = p;
  g.for_each([](std::string_view, NdArray& a) { a.fill(0.0); });
  return g;
}

Parameters zero_parameters(const NetworkConfig& cfg) {
  cfg.validate();
  Parameters p;
  if (cfg.topology == Topology::Recurrent) {
    p.tdl = DenseParams::zeros(cfg.obs_dim, cfg.tdl_units);
    p.gru = GruParams::zeros(cfg.tdl_units, cfg.gru_units);
    p.fc1 = DenseParams::zeros(cfg.gru_units, cfg.fc1_units);
    p.fc2 = DenseParams::zeros(cfg.fc1_units, cfg.n_actions);
  } else {
    const std::size_t w = cfg.resolved_ff_units();
    p.tdl = DenseParams::zeros(cfg.obs_dim * cfg.seq_len, w);
    p.fc1 = DenseParams::zeros(w, w);
    p.fc2 = DenseParams::zeros(w, cfg.n_actions);
  }
  return p;
}

InstanceId::InstanceId() : value_(next_instance.fetch_add(1)) {}
InstanceId::InstanceId(const InstanceId&) : value_(next_instance.fetch_add(1)) {}
InstanceId& InstanceId::operator=(const InstanceId& other) {
  if (this != &other) value_ = next_instance.fetch_add(1);
  return *this;
}

QNetwork::QNetwork(NetworkConfig cfg) : config_(cfg), params_(zero_parameters(cfg)) {
  if (config_.init_scheme == InitScheme::Zeros) return;
  Rng rng(derive_seed(config_.init_seed, SeedStream::NetworkInit));
  params_.for_each([&](std::string_view, NdArray& a) {
    if (a.rank() != 2) return;  // biases stay zero
    const double fan_out = static_cast<double>(a.dim(0));
    const double fan_in = static_cast<double>(a.dim(1));
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (double& v : a.data()) v = uniform(rng, -limit, limit);
  });
}

QNetwork::QNetwork(NetworkConfig cfg, Parameters params) : config_(cfg), params_(std::move(params)) {
  const Parameters expected = zero_parameters(config_);
  std::vector<std::vector<std::size_t>> shapes;
  expected.for_each([&](std::string_view, const NdArray& a) { shapes.push_back(a.shape()); });
  std::size_t i = 0;
  params_.for_each([&](std::string_view name, const NdArray& a) {
    if (i >= shapes.size() || a.shape() != shapes[i])
      throw DimensionError("QNetwork: parameter " + std::string(name) + " has shape " +
                           shape_string(a.shape()) + " inconsistent with the config");
    ++i;
  });
  if (i != shapes.size()) throw DimensionError("QNetwork: parameter set does not match the config");
}

void QNetwork::copy_parameters_from(const QNetwork& other) {
  if (!(other.config_ == config_)) throw DimensionError("copy_parameters_from: config mismatch");
  mutable_parameters() = other.params_;
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

namespace {

NdArray relu(const NdArray& pre) {
  NdArray out = pre;
  for (double& v : out.data()) v = v > 0.0 ? v : 0.0;
  return out;
}

void relu_backward_inplace(NdArray& grad, const NdArray& pre) {
  for (std::size_t i = 0; i < grad.size(); ++i)
    if (!(pre[i] > 0.0)) grad[i] = 0.0;
}

}  // namespace

QForward forward_q(const QNetwork& net, const NdArray& window) {
  const auto& cfg = net.config();
  const auto& p = net.parameters();
  QForward f;
  QCache& c = f.cache;
  c.instance = net.instance();
  c.revision = net.revision();

  if (window.rank() == 2) {
    expect_shape(window, {cfg.seq_len, cfg.obs_dim}, "forward_q window");
    c.batch = 1;
    c.batched_input = false;
  } else if (window.rank() == 3 && window.dim(1) == cfg.seq_len && window.dim(2) == cfg.obs_dim) {
    c.batch = window.dim(0);
    c.batched_input = true;
  } else {
    throw DimensionError("forward_q: window must be (" + std::to_string(cfg.seq_len) + ", " +
                         std::to_string(cfg.obs_dim) + ") or batched, got " +
                         shape_string(window.shape()));
  }
  const std::size_t batch = c.batch;
  const std::size_t steps = cfg.seq_len;
  const std::size_t obs = cfg.obs_dim;

  NdArray head_in;
  if (cfg.topology == Topology::Recurrent) {
    // Time-major rows so the shared per-step layer runs as one product.
    NdArray xs({steps * batch, obs});
    for (std::size_t t = 0; t < steps; ++t)
      for (std::size_t b = 0; b < batch; ++b)
        std::copy_n(window.raw() + (b * steps + t) * obs, obs, xs.raw() + (t * batch + b) * obs);
    auto d = dense_forward(p.tdl, xs);
    auto g = gru_forward(p.gru, relu(d.output), NdArray({batch, cfg.gru_units}));
    c.tdl = std::move(d.cache);
    c.tdl_pre = std::move(d.output);
    head_in = NdArray({batch, cfg.gru_units});
    std::copy_n(g.h.raw() + (steps - 1) * batch * cfg.gru_units, batch * cfg.gru_units,
                head_in.raw());
    c.gru = std::move(g.cache);
  } else {
    const NdArray flat = window.reshaped({batch, steps * obs});
    auto d = dense_forward(p.tdl, flat);
    head_in = relu(d.output);
    c.tdl = std::move(d.cache);
    c.tdl_pre = std::move(d.output);
  }

  auto h1 = dense_forward(p.fc1, head_in);
  c.fc1 = std::move(h1.cache);
  c.fc1_pre = std::move(h1.output);
  auto out = dense_forward(p.fc2, relu(c.fc1_pre));
  c.fc2 = std::move(out.cache);
  f.q = c.batched_input ? std::move(out.output) : out.output.reshaped({cfg.n_actions});
  return f;
}

Gradients backward_q(const QNetwork& net, const QCache& cache, const NdArray& dq) {
  if (cache.instance != net.instance() || cache.revision != net.revision())
    throw ContractViolation("backward_q: cache does not belong to the current network state");
  const auto& cfg = net.config();
  const auto& p = net.parameters();
  const std::size_t batch = cache.batch;
  const NdArray g_out = cache.batched_input ? dq : dq.reshaped({1, dq.size()});
  expect_shape(g_out, {batch, cfg.n_actions}, "backward_q dq");

  Gradients grads;
  auto b2 = dense_backward(p.fc2, cache.fc2, g_out);
  grads.fc2 = {std::move(b2.d_weight), std::move(b2.d_bias)};
  relu_backward_inplace(b2.d_input, cache.fc1_pre);
  auto b1 = dense_backward(p.fc1, cache.fc1, b2.d_input);
  grads.fc1 = {std::move(b1.d_weight), std::move(b1.d_bias)};

  if (cfg.topology == Topology::Recurrent) {
    const std::size_t rows = cfg.seq_len * batch;
    NdArray d_h({rows, cfg.gru_units});
    std::copy_n(b1.d_input.raw(), batch * cfg.gru_units,
                d_h.raw() + (rows - batch) * cfg.gru_units);
    auto gb = gru_backward(p.gru, cache.gru, d_h);
    grads.gru = std::move(gb.d_params);
    // The per-step layer shares its weights, so one product sums every step's share.
    relu_backward_inplace(gb.d_x, cache.tdl_pre);
    auto b0 = dense_backward(p.tdl, cache.tdl, gb.d_x);
    grads.tdl = {std::move(b0.d_weight), std::move(b0.d_bias)};
  } else {
    relu_backward_inplace(b1.d_input, cache.tdl_pre);
    auto b0 = dense_backward(p.tdl, cache.tdl, b1.d_input);
    grads.tdl = {std::move(b0.d_weight), std::move(b0.d_bias)};
  }
  return grads;
}

}  // namespace navrl::neural
