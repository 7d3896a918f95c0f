#include "navrl/neural/dense.hpp"

#include "eigen_views.hpp"
#include "navrl/errors.hpp"

namespace navrl::neural {

using detail::as_matrix;
using detail::as_vector;

namespace {

void check_params(const DenseParams& p) {
  if (p.weight.rank() != 2) throw DimensionError("dense: weight must be rank 2");
  expect_shape(p.bias, {p.out()}, "dense bias");
}

}  // namespace

DenseForward dense_forward(const DenseParams& p, const NdArray& x) {
  check_params(p);
  DenseForward f;
  if (x.rank() == 1) {
    expect_shape(x, {p.in()}, "dense input");
    f.output = NdArray({p.out()});
    f.cache.input = x.reshaped({1, p.in()});
  } else {
    if (x.rank() != 2 || x.dim(1) != p.in())
      throw DimensionError("dense input: expected (batch, " + std::to_string(p.in()) + "), got " +
                           shape_string(x.shape()));
    f.output = NdArray({x.dim(0), p.out()});
    f.cache.input = x;
  }
  auto y = as_matrix(f.output);
  y.noalias() = as_matrix(f.cache.input) * as_matrix(p.weight).transpose();
  y.rowwise() += as_vector(p.bias).transpose();
  return f;
}

DenseBackward dense_backward(const DenseParams& p, const DenseCache& cache, const NdArray& dy) {
  check_params(p);
  const std::size_t batch = cache.input.dim(0);
  const bool vector_form = dy.rank() == 1;
  if (vector_form ? (batch != 1 || dy.dim(0) != p.out())
                  : (dy.rank() != 2 || dy.dim(0) != batch || dy.dim(1) != p.out()))
    throw DimensionError("dense backward: gradient shape " + shape_string(dy.shape()) +
                         " does not match output");
  DenseBackward b{NdArray({p.out(), p.in()}), NdArray({p.out()}),
                  vector_form ? NdArray({p.in()}) : NdArray({batch, p.in()})};
  const auto g = as_matrix(dy);
  as_matrix(b.d_weight).noalias() = g.transpose() * as_matrix(cache.input);
  as_vector(b.d_bias) = g.colwise().sum().transpose();
  as_matrix(b.d_input).noalias() = g * as_matrix(p.weight);
  return b;
}

}  // namespace navrl::neural
