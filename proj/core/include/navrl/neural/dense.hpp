#pragma once

#include "navrl/neural/ndarray.hpp"

namespace navrl::neural {

/// y = W x + b with W of shape (out, in).
struct DenseParams {
  NdArray weight;
  NdArray bias;

  static DenseParams zeros(std::size_t in, std::size_t out) {
    return {NdArray({out, in}), NdArray({out})};
  }
  std::size_t in() const { return weight.dim(1); }
  std::size_t out() const { return weight.dim(0); }
  friend bool operator==(const DenseParams&, const DenseParams&) = default;
};

struct DenseCache {
  NdArray input;  // (batch, in)
};

struct DenseForward {
  NdArray output;  // (batch, out)
  DenseCache cache;
};

struct DenseBackward {
  NdArray d_weight;
  NdArray d_bias;
  NdArray d_input;
};

/// Accepts x of shape (in) or (batch, in); output rank matches input rank.
DenseForward dense_forward(const DenseParams& p, const NdArray& x);
DenseBackward dense_backward(const DenseParams& p, const DenseCache& cache, const NdArray& dy);

}  // namespace navrl::neural
