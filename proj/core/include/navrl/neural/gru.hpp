#pragma once

#include <vector>

#include "navrl/neural/ndarray.hpp"

namespace navrl::neural {

/// Gated recurrent unit parameters. W_* are (hidden, input), U_* are
/// (hidden, hidden), b_* are (hidden).
struct GruParams {
  NdArray w_z, w_r, w_h;
  NdArray u_z, u_r, u_h;
  NdArray b_z, b_r, b_h;

  static GruParams zeros(std::size_t input, std::size_t hidden);
  std::size_t input_size() const { return w_z.empty() ? 0 : w_z.dim(1); }
  std::size_t hidden_size() const { return w_z.empty() ? 0 : w_z.dim(0); }
  bool empty() const { return w_z.empty(); }
  /// Throws DimensionError unless all nine arrays agree on one (input, hidden) pair.
  void validate() const;
  friend bool operator==(const GruParams&, const GruParams&) = default;
};

/// Intermediates of a batched sequence, stacked time-major: row t * batch + b
/// belongs to step t of sequence b.
struct GruCache {
  std::size_t steps = 0;
  std::size_t batch = 0;
  NdArray x;       // (steps * batch, input)
  NdArray h_prev;  // (steps * batch, hidden)
  NdArray z;
  NdArray r;
  NdArray candidate;
};

struct GruForward {
  NdArray h;  // (steps * batch, hidden), state after each step
  GruCache cache;
};

struct GruBackward {
  GruParams d_params;
  NdArray d_x;  // (steps * batch, input)
  NdArray d_h0;
};

/// z = sigmoid(W_z x + U_z h + b_z), r = sigmoid(W_r x + U_r h + b_r),
/// c = tanh(W_h x + U_h (r * h) + b_h), h' = (1 - z) * h + z * c.
/// x_seq is (steps * batch, input) in time-major order, h0 is (batch, hidden).
GruForward gru_forward(const GruParams& p, const NdArray& x_seq, const NdArray& h0);

/// Single-sequence form: x_seq (steps, input), h0 (hidden). Returns h_seq (steps, hidden).
NdArray gru_forward_sequence(const GruParams& p, const NdArray& x_seq, const NdArray& h0);

/// BPTT. d_h is the gradient flowing into every h_t from outside the recurrence,
/// laid out like GruForward::h; an empty array means zero.
GruBackward gru_backward(const GruParams& p, const GruCache& cache, const NdArray& d_h);

}  // namespace navrl::neural
