#include "navrl/neural/ndarray.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "navrl/errors.hpp"

namespace navrl::neural {

namespace {
std::size_t product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}
}  // namespace

NdArray::NdArray(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), data_(product(shape_), fill) {}

NdArray::NdArray(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(data.begin(), data.end()) {
  if (product(shape_) != data_.size())
    throw DimensionError("NdArray: shape " + shape_string(shape_) + " does not hold " +
                         std::to_string(data_.size()) + " elements");
}

NdArray NdArray::vector(std::initializer_list<double> values) {
  return NdArray({values.size()}, std::vector<double>(values));
}

NdArray NdArray::matrix(std::size_t rows, std::size_t cols,
                        std::initializer_list<double> row_major_values) {
  return NdArray({rows, cols}, std::vector<double>(row_major_values));
}

std::size_t NdArray::dim(std::size_t axis) const {
  if (axis >= shape_.size())
    throw DimensionError("NdArray: axis " + std::to_string(axis) + " out of range for shape " +
                         shape_string(shape_));
  return shape_[axis];
}

void NdArray::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

NdArray NdArray::reshaped(std::vector<std::size_t> shape) const {
  if (product(shape) != data_.size())
    throw DimensionError("NdArray: cannot reshape " + shape_string(shape_) + " to " +
                         shape_string(shape));
  NdArray out = *this;
  out.shape_ = std::move(shape);
  return out;
}

bool NdArray::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double NdArray::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string s = "(";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(shape[i]);
  }
  return s + ")";
}

void expect_shape(const NdArray& a, const std::vector<std::size_t>& shape, const char* what) {
  if (a.shape() != shape)
    throw DimensionError(std::string(what) + ": expected shape " + shape_string(shape) +
                         ", got " + shape_string(a.shape()));
}

}  // namespace navrl::neural
