#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "navrl/neural/dense.hpp"
#include "navrl/neural/gru.hpp"
#include "navrl/neural/ndarray.hpp"

namespace navrl::neural {

enum class Topology : std::uint8_t {
  Recurrent,    // per-step dense -> GRU -> fc1 -> fc2
  FeedForward,  // flattened window -> dense -> fc1 -> fc2
};

enum class InitScheme : std::uint8_t {
  GlorotUniform,  // U(-a, a), a = sqrt(6 / (fan_in + fan_out)); zero biases
  Zeros,
};

std::string_view to_string(Topology t);
std::string_view to_string(InitScheme s);

struct NetworkConfig {
  Topology topology = Topology::Recurrent;
  std::size_t obs_dim = 26;
  std::size_t seq_len = 4;
  std::size_t tdl_units = 64;
  std::size_t gru_units = 64;
  std::size_t fc1_units = 64;
  std::size_t n_actions = 5;
  /// FeedForward hidden width; 0 picks the smallest width whose parameter count
  /// reaches that of the recurrent network with the same settings.
  std::size_t ff_units = 0;
  InitScheme init_scheme = InitScheme::GlorotUniform;
  std::uint64_t init_seed = 0;

  void validate() const;
  std::size_t resolved_ff_units() const;
  friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

/// All learnable arrays. In the FeedForward topology `gru` is empty and `tdl`
/// takes the flattened window.
struct Parameters {
  DenseParams tdl;
  GruParams gru;
  DenseParams fc1;
  DenseParams fc2;

  /// Visits every non-empty array with a stable name ("tdl.weight", "gru.U_h", ...).
  template <class F>
  void for_each(F&& f) {
    visit(*this, f);
  }
  template <class F>
  void for_each(F&& f) const {
    visit(*this, f);
  }

  std::size_t count() const;
  bool all_finite() const;
  friend bool operator==(const Parameters&, const Parameters&) = default;

 private:
  template <class Self, class F>
  static void visit(Self& s, F& f) {
    f("tdl.weight", s.tdl.weight);
    f("tdl.bias", s.tdl.bias);
    if (!s.gru.empty()) {
      f("gru.W_z", s.gru.w_z);
      f("gru.W_r", s.gru.w_r);
      f("gru.W_h", s.gru.w_h);
      f("gru.U_z", s.gru.u_z);
      f("gru.U_r", s.gru.u_r);
      f("gru.U_h", s.gru.u_h);
      f("gru.b_z", s.gru.b_z);
      f("gru.b_r", s.gru.b_r);
      f("gru.b_h", s.gru.b_h);
    }
    f("fc1.weight", s.fc1.weight);
    f("fc1.bias", s.fc1.bias);
    f("fc2.weight", s.fc2.weight);
    f("fc2.bias", s.fc2.bias);
  }
};

/// Same layout as Parameters, holding d(output)/d(parameter).
struct Gradients : Parameters {
  static Gradients zeros_like(const Parameters& p);
};

/// Zero-filled parameters with the shapes implied by `cfg`.
Parameters zero_parameters(const NetworkConfig& cfg);

/// Tag that changes identity on copy, so caches can tell networks apart.
class InstanceId {
 public:
  InstanceId();
  InstanceId(const InstanceId&);
  InstanceId& operator=(const InstanceId&);
  InstanceId(InstanceId&&) noexcept = default;
  InstanceId& operator=(InstanceId&&) noexcept = default;
  std::uint64_t value() const { return value_; }

 private:
  std::uint64_t value_;
};

class QNetwork {
 public:
  /// Initialized per cfg.init_scheme from cfg.init_seed.
  explicit QNetwork(NetworkConfig cfg);
  QNetwork(NetworkConfig cfg, Parameters params);

  const NetworkConfig& config() const { return config_; }
  const Parameters& parameters() const { return params_; }
  /// Mutable access invalidates every cache produced so far.
  Parameters& mutable_parameters() {
    ++revision_;
    return params_;
  }
  std::uint64_t revision() const { return revision_; }
  std::uint64_t instance() const { return id_.value(); }

  /// Hard copy of another network's parameters (shapes must agree).
  void copy_parameters_from(const QNetwork& other);

 private:
  NetworkConfig config_;
  Parameters params_;
  std::uint64_t revision_ = 0;
  InstanceId id_;
};

/// Intermediates of one forward pass, tied to the network instance and revision.
struct QCache {
  std::uint64_t instance = 0;
  std::uint64_t revision = 0;
  std::size_t batch = 0;
  bool batched_input = false;
  /// Recurrent: input rows are the window's steps stacked time-major.
  /// FeedForward: one flattened window per row.
  DenseCache tdl;
  NdArray tdl_pre;
  GruCache gru;
  DenseCache fc1;
  NdArray fc1_pre;
  DenseCache fc2;
};

struct QForward {
  NdArray q;  // (n_actions) or (batch, n_actions)
  QCache cache;
};

/// window: (seq_len, obs_dim) or (batch, seq_len, obs_dim).
QForward forward_q(const QNetwork& net, const NdArray& window);

/// Gradient of sum(dq * q) with respect to every parameter.
/// Throws ContractViolation if the cache came from another network or an older revision.
Gradients backward_q(const QNetwork& net, const QCache& cache, const NdArray& dq);

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

}  // namespace navrl::neural
