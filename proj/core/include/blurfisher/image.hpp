#pragma once

#include <array>
#include <cstdint>

#include "blurfisher/grid.hpp"
#include "blurfisher/units.hpp"

namespace blurfisher {

/// Linear luminance samples on the retinal lattice.
struct LuminanceImage {
  RealGrid samples;
  RetinalGeometry geometry;

  /// Validates finiteness and takes the geometry's grid size from the samples.
  static LuminanceImage from_samples(RealGrid samples, double receptors_per_degree = 60.0);

  std::size_t width() const noexcept { return samples.width(); }
  std::size_t height() const noexcept { return samples.height(); }
  void validate() const;
};

using Rgb8 = std::array<std::uint8_t, 3>;
using RgbImage = Grid<Rgb8>;

double mean_of(const RealGrid& g);
RealGrid subtract_mean(const RealGrid& g);

/// Exact lattice rotation by quarter turns (counter-clockwise in x right, y up).
/// Requires a square grid for odd turns.
RealGrid rotate_quarter_turns(const RealGrid& g, int turns);
ComplexGrid rotate_quarter_turns(const ComplexGrid& g, int turns);

/// Periodic translation: out(x, y) = in(x - dx, y - dy).
RealGrid circular_shift(const RealGrid& g, long dx, long dy);

double srgb_to_linear(double encoded) noexcept;
double linear_to_srgb(double linear) noexcept;

}  // namespace blurfisher
