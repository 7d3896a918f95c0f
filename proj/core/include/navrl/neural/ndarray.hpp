#pragma once

#include <cstddef>
#include <initializer_list>
#include <new>
#include <span>
#include <string>
#include <vector>

namespace navrl::neural {

/// Cache-line aligned allocation. Vectorized reductions split work by address,
/// so the same values stored at different alignments can round differently.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};
  AlignedAllocator() = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlign)); }
  void deallocate(T* p, std::size_t) noexcept { ::operator delete(p, kAlign); }
  template <class U>
  friend bool operator==(const AlignedAllocator&, const AlignedAllocator<U>&) noexcept {
    return true;
  }
};

/// Dense row-major array of doubles.
class NdArray {
 public:
  NdArray() = default;
  explicit NdArray(std::vector<std::size_t> shape, double fill = 0.0);
  /// Throws DimensionError if data.size() != product(shape).
  NdArray(std::vector<std::size_t> shape, std::vector<double> data);

  static NdArray zeros(std::vector<std::size_t> shape) { return NdArray(std::move(shape)); }
  static NdArray vector(std::initializer_list<double> values);
  static NdArray matrix(std::size_t rows, std::size_t cols,
                        std::initializer_list<double> row_major_values);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  std::size_t dim(std::size_t axis) const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  double* raw() { return data_.data(); }
  const double* raw() const { return data_.data(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  void fill(double v);
  /// Same data, new shape with equal element count.
  NdArray reshaped(std::vector<std::size_t> shape) const;
  bool all_finite() const;
  double max_abs() const;

  friend bool operator==(const NdArray&, const NdArray&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double, AlignedAllocator<double>> data_;
};

std::string shape_string(const std::vector<std::size_t>& shape);

/// Throws DimensionError unless `a` has exactly `shape`.
void expect_shape(const NdArray& a, const std::vector<std::size_t>& shape, const char* what);

}  // namespace navrl::neural
