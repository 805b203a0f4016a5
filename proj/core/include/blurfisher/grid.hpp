#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "blurfisher/errors.hpp"

namespace blurfisher {

using Complex = std::complex<double>;

/// Dense row-major 2D array. Index (x, y) with x the column.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(width * height, fill) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }
  const T& operator()(std::size_t x, std::size_t y) const noexcept {
    return data_[y * width_ + x];
  }

  /// Periodic access; negative or oversized indices wrap around.
  const T& wrapped(long x, long y) const noexcept {
    const long w = static_cast<long>(width_);
    const long h = static_cast<long>(height_);
    x %= w;
    y %= h;
    if (x < 0) x += w;
    if (y < 0) y += h;
    return data_[static_cast<std::size_t>(y) * width_ + static_cast<std::size_t>(x)];
  }

  std::span<T> values() noexcept { return data_; }
  std::span<const T> values() const noexcept { return data_; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  template <class U>
  bool same_shape(const Grid<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

using RealGrid = Grid<double>;
using ComplexGrid = Grid<Complex>;

template <class A, class B>
void require_same_shape(const Grid<A>& a, const Grid<B>& b, const char* what) {
  if (!a.same_shape(b)) {
    throw ShapeError(std::string(what) + ": grid " + std::to_string(a.width()) + "x" +
                     std::to_string(a.height()) + " does not match " +
                     std::to_string(b.width()) + "x" + std::to_string(b.height()));
  }
}

}  // namespace blurfisher
