#pragma once

#include <Eigen/Core>

#include "navrl/neural/ndarray.hpp"

namespace navrl::neural::detail {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;
using VectorMap = Eigen::Map<Eigen::VectorXd>;
using ConstVectorMap = Eigen::Map<const Eigen::VectorXd>;

// Rank-1 arrays are viewed as a single row.
inline MatrixMap as_matrix(NdArray& a) {
  const auto rows = a.rank() == 1 ? 1 : static_cast<Eigen::Index>(a.dim(0));
  const auto cols = static_cast<Eigen::Index>(a.rank() == 1 ? a.dim(0) : a.dim(1));
  return {a.raw(), rows, cols};
}

inline ConstMatrixMap as_matrix(const NdArray& a) {
  const auto rows = a.rank() == 1 ? 1 : static_cast<Eigen::Index>(a.dim(0));
  const auto cols = static_cast<Eigen::Index>(a.rank() == 1 ? a.dim(0) : a.dim(1));
  return {a.raw(), rows, cols};
}

inline VectorMap as_vector(NdArray& a) {
  return {a.raw(), static_cast<Eigen::Index>(a.size())};
}

inline ConstVectorMap as_vector(const NdArray& a) {
  return {a.raw(), static_cast<Eigen::Index>(a.size())};
}

}  // namespace navrl::neural::detail
