#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "enkcf/error.hpp"

namespace enkcf {

/// Dense row-major grid. Index (x, y) lives at y * width + x.
template <typename T>
class Plane {
 public:
  using value_type = T;

  Plane() = default;

  Plane(int width, int height, T fill = T{}) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw DimensionError("plane dimensions must be positive, got " +
                           std::to_string(width) + "x" + std::to_string(height));
    }
    values_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  bool same_shape(const Plane& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  template <typename U>
  bool same_shape(const Plane<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  T& operator()(int x, int y) { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  const T& operator()(int x, int y) const {
    return values_[static_cast<std::size_t>(y) * width_ + x];
  }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  T* data() { return values_.data(); }
  const T* data() const { return values_.data(); }
  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  bool operator==(const Plane&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> values_;
};

using RealPlane = Plane<double>;
using ComplexPlane = Plane<std::complex<double>>;

}  // namespace enkcf
