#include "navrl/neural/gru.hpp"

#include <cmath>

#include "eigen_views.hpp"
#include "navrl/errors.hpp"

namespace navrl::neural {

using detail::as_matrix;
using detail::as_vector;

GruParams GruParams::zeros(std::size_t input, std::size_t hidden) {
  GruParams p;
  p.w_z = p.w_r = p.w_h = NdArray({hidden, input});
  p.u_z = p.u_r = p.u_h = NdArray({hidden, hidden});
  p.b_z = p.b_r = p.b_h = NdArray({hidden});
  return p;
}

void GruParams::validate() const {
  if (w_z.rank() != 2) throw DimensionError("gru: W_z must be rank 2");
  const std::size_t h = w_z.dim(0);
  const std::size_t i = w_z.dim(1);
  expect_shape(w_r, {h, i}, "gru W_r");
  expect_shape(w_h, {h, i}, "gru W_h");
  expect_shape(u_z, {h, h}, "gru U_z");
  expect_shape(u_r, {h, h}, "gru U_r");
  expect_shape(u_h, {h, h}, "gru U_h");
  expect_shape(b_z, {h}, "gru b_z");
  expect_shape(b_r, {h}, "gru b_r");
  expect_shape(b_h, {h}, "gru b_h");
}

namespace {

// Both gates go through the vectorized exp. exp(-a) saturates to inf for very
// negative a, which still yields 0.
void sigmoid_inplace(Eigen::Ref<detail::RowMatrix> m) {
  m = (1.0 + (-m.array()).exp()).inverse().matrix();
}

void tanh_inplace(Eigen::Ref<detail::RowMatrix> m) {
  const Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> t =
      (-2.0 * m.array().abs()).exp();
  m = (m.array().sign() * (1.0 - t) / (1.0 + t)).matrix();
}

}  // namespace

namespace {

using detail::RowMatrix;

// [W_z; W_r; W_h] so one product covers all three gates.
RowMatrix stacked_input_weights(const GruParams& p) {
  const auto h = static_cast<Eigen::Index>(p.hidden_size());
  RowMatrix w(3 * h, static_cast<Eigen::Index>(p.input_size()));
  w.topRows(h) = as_matrix(p.w_z);
  w.middleRows(h, h) = as_matrix(p.w_r);
  w.bottomRows(h) = as_matrix(p.w_h);
  return w;
}

RowMatrix stacked_gate_recurrence(const GruParams& p) {
  const auto h = static_cast<Eigen::Index>(p.hidden_size());
  RowMatrix u(2 * h, h);
  u.topRows(h) = as_matrix(p.u_z);
  u.bottomRows(h) = as_matrix(p.u_r);
  return u;
}

}  // namespace

GruForward gru_forward(const GruParams& p, const NdArray& x_seq, const NdArray& h0) {
  p.validate();
  const std::size_t hidden = p.hidden_size();
  const std::size_t input = p.input_size();
  if (h0.rank() != 2 || h0.dim(1) != hidden)
    throw DimensionError("gru: h0 must be (batch, " + std::to_string(hidden) + "), got " +
                         shape_string(h0.shape()));
  const std::size_t batch = h0.dim(0);
  if (batch == 0) throw DimensionError("gru: empty batch");
  if (x_seq.rank() != 2 || x_seq.dim(1) != input || x_seq.dim(0) % batch != 0)
    throw DimensionError("gru: x_seq must be (steps * " + std::to_string(batch) + ", " +
                         std::to_string(input) + "), got " + shape_string(x_seq.shape()));
  const std::size_t steps = x_seq.dim(0) / batch;
  const std::size_t rows = steps * batch;
  const auto H = static_cast<Eigen::Index>(hidden);
  const auto B = static_cast<Eigen::Index>(batch);

  GruForward f;
  auto& c = f.cache;
  c.steps = steps;
  c.batch = batch;
  c.x = x_seq;
  c.h_prev = NdArray({rows, hidden});
  c.z = NdArray({rows, hidden});
  c.r = NdArray({rows, hidden});
  c.candidate = NdArray({rows, hidden});
  f.h = NdArray({rows, hidden});

  const RowMatrix w = stacked_input_weights(p);
  const RowMatrix u = stacked_gate_recurrence(p);
  const auto uh = as_matrix(p.u_h);
  Eigen::RowVectorXd bias(3 * H);
  bias << as_vector(p.b_z).transpose(), as_vector(p.b_r).transpose(), as_vector(p.b_h).transpose();

  // Input projections of every step at once.
  RowMatrix xw = as_matrix(c.x) * w.transpose();
  xw.rowwise() += bias;

  auto hp_all = as_matrix(c.h_prev), z_all = as_matrix(c.z), r_all = as_matrix(c.r);
  auto c_all = as_matrix(c.candidate), h_all = as_matrix(f.h);
  RowMatrix zr(B, 2 * H), gated(B, H);
  for (std::size_t t = 0; t < steps; ++t) {
    const auto row = static_cast<Eigen::Index>(t * batch);
    auto hp = hp_all.middleRows(row, B);
    if (t == 0) hp = as_matrix(h0);
    else hp = h_all.middleRows(row - B, B);

    zr.noalias() = hp * u.transpose();
    zr += xw.block(row, 0, B, 2 * H);
    sigmoid_inplace(zr);
    auto z = z_all.middleRows(row, B);
    auto r = r_all.middleRows(row, B);
    z = zr.leftCols(H);
    r = zr.rightCols(H);

    gated = r.cwiseProduct(hp);
    auto cand = c_all.middleRows(row, B);
    cand = xw.block(row, 2 * H, B, H);
    cand.noalias() += gated * uh.transpose();
    tanh_inplace(cand);

    h_all.middleRows(row, B) = hp + z.cwiseProduct(cand - hp);
  }
  return f;
}

NdArray gru_forward_sequence(const GruParams& p, const NdArray& x_seq, const NdArray& h0) {
  p.validate();
  if (x_seq.rank() != 2) throw DimensionError("gru: x_seq must be (steps, input)");
  expect_shape(h0, {p.hidden_size()}, "gru h0");
  // With a batch of one the time-major layout is the sequence itself.
  return gru_forward(p, x_seq, h0.reshaped({1, p.hidden_size()})).h;
}

GruBackward gru_backward(const GruParams& p, const GruCache& cache, const NdArray& d_h) {
  p.validate();
  const std::size_t steps = cache.steps;
  const std::size_t batch = cache.batch;
  const std::size_t hidden = p.hidden_size();
  const std::size_t input = p.input_size();
  const std::size_t rows = steps * batch;
  expect_shape(cache.x, {rows, input}, "gru backward cache x");
  expect_shape(cache.h_prev, {rows, hidden}, "gru backward cache h_prev");
  if (!d_h.empty()) expect_shape(d_h, {rows, hidden}, "gru backward d_h");
  const auto H = static_cast<Eigen::Index>(hidden);
  const auto B = static_cast<Eigen::Index>(batch);

  const auto hp_all = as_matrix(cache.h_prev), z_all = as_matrix(cache.z);
  const auto r_all = as_matrix(cache.r), c_all = as_matrix(cache.candidate);
  const RowMatrix u = stacked_gate_recurrence(p);
  const auto uh = as_matrix(p.u_h);

  // Pre-activation gradients of [z, r, candidate] for every step.
  RowMatrix da = RowMatrix::Zero(static_cast<Eigen::Index>(rows), 3 * H);
  RowMatrix dh = RowMatrix::Zero(B, H);
  RowMatrix dhp(B, H), d_gated(B, H);
  for (std::size_t s = steps; s-- > 0;) {
    const auto row = static_cast<Eigen::Index>(s * batch);
    if (!d_h.empty()) dh += as_matrix(d_h).middleRows(row, B);
    const auto hp = hp_all.middleRows(row, B);
    const auto z = z_all.middleRows(row, B);
    const auto r = r_all.middleRows(row, B);
    const auto c = c_all.middleRows(row, B);

    // h = hp + z (c - hp)
    dhp = dh - dh.cwiseProduct(z);
    auto da_z = da.block(row, 0, B, H);
    auto da_r = da.block(row, H, B, H);
    auto da_h = da.block(row, 2 * H, B, H);
    da_h = (dh.array() * z.array() * (1.0 - c.array().square())).matrix();
    d_gated.noalias() = da_h * uh;
    dhp += d_gated.cwiseProduct(r);
    da_z = (dh.array() * (c - hp).array() * z.array() * (1.0 - z.array())).matrix();
    da_r = (d_gated.array() * hp.array() * r.array() * (1.0 - r.array())).matrix();
    dhp.noalias() += da.block(row, 0, B, 2 * H) * u;
    dh.swap(dhp);
  }

  GruBackward b;
  b.d_params = GruParams::zeros(input, hidden);
  auto& g = b.d_params;
  const RowMatrix dw = da.transpose() * as_matrix(cache.x);
  as_matrix(g.w_z) = dw.topRows(H);
  as_matrix(g.w_r) = dw.middleRows(H, H);
  as_matrix(g.w_h) = dw.bottomRows(H);
  const RowMatrix du = da.leftCols(2 * H).transpose() * hp_all;
  as_matrix(g.u_z) = du.topRows(H);
  as_matrix(g.u_r) = du.bottomRows(H);
  const RowMatrix gated = r_all.cwiseProduct(hp_all);
  as_matrix(g.u_h).noalias() = da.rightCols(H).transpose() * gated;
  const Eigen::RowVectorXd db = da.colwise().sum();
  as_vector(g.b_z) = db.segment(0, H).transpose();
  as_vector(g.b_r) = db.segment(H, H).transpose();
  as_vector(g.b_h) = db.segment(2 * H, H).transpose();

  b.d_x = NdArray({rows, input});
  as_matrix(b.d_x).noalias() = da * stacked_input_weights(p);
  b.d_h0 = NdArray({batch, hidden});
  as_matrix(b.d_h0) = dh;
  return b;
}

}  // namespace navrl::neural
