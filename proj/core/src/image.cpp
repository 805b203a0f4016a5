#include "blurfisher/image.hpp"

#include <cmath>
#include <numeric>

namespace blurfisher {

LuminanceImage LuminanceImage::from_samples(RealGrid samples, double receptors_per_degree) {
  LuminanceImage img{std::move(samples), {receptors_per_degree, 0, 0}};
  img.geometry.grid_width = img.samples.width();
  img.geometry.grid_height = img.samples.height();
  img.validate();
  return img;
}

void LuminanceImage::validate() const {
  geometry.validate();
  if (geometry.grid_width != samples.width() || geometry.grid_height != samples.height()) {
    throw ShapeError("luminance image: samples do not match the geometry grid");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw DomainError("luminance image contains a non-finite sample");
  }
}

double mean_of(const RealGrid& g) {
  if (g.empty()) return 0.0;
  return std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
}

RealGrid subtract_mean(const RealGrid& g) {
  RealGrid out = g;
  const double m = mean_of(g);
  for (auto& v : out) v -= m;
  return out;
}

namespace {

template <class T>
Grid<T> rotate_impl(const Grid<T>& g, int turns) {
  turns = ((turns % 4) + 4) % 4;
  if (turns == 0) return g;
  if (turns % 2 == 1 && g.width() != g.height()) {
    throw ShapeError("quarter-turn rotation needs a square grid");
  }
  const long w = static_cast<long>(g.width());
  const long h = static_cast<long>(g.height());
  Grid<T> out(g.width(), g.height());
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      // out(p) = in(R^{-1} p) with p taken modulo the lattice (origin at index 0).
      long sx = x, sy = y;
      switch (turns) {
        case 1: sx = y; sy = -x; break;
        case 2: sx = -x; sy = -y; break;
        case 3: sx = -y; sy = x; break;
        default: break;
      }
      out(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = g.wrapped(sx, sy);
    }
  }
  return out;
}

}  // namespace

RealGrid rotate_quarter_turns(const RealGrid& g, int turns) { return rotate_impl(g, turns); }
ComplexGrid rotate_quarter_turns(const ComplexGrid& g, int turns) { return rotate_impl(g, turns); }

RealGrid circular_shift(const RealGrid& g, long dx, long dy) {
  RealGrid out(g.width(), g.height());
  for (std::size_t y = 0; y < g.height(); ++y) {
    for (std::size_t x = 0; x < g.width(); ++x) {
      out(x, y) = g.wrapped(static_cast<long>(x) - dx, static_cast<long>(y) - dy);
    }
  }
  return out;
}

double srgb_to_linear(double e) noexcept {
  if (e <= 0.04045) return e / 12.92;
  return std::pow((e + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double l) noexcept {
  if (l <= 0.0031308) return 12.92 * l;
  return 1.055 * std::pow(l, 1.0 / 2.4) - 0.055;
}

}  // namespace blurfisher
