#pragma once

#include <cstddef>
#include <cstdint>

#include "blurfisher/image.hpp"

namespace blurfisher {

/// Occlusion ("dead leaves") model: opaque discs of random gray level with
/// radius density proportional to r^-exponent, layered front to back until the
/// frame is covered. Produces scale-invariant edge statistics similar to
/// photographs of natural scenes.
struct DeadLeavesOptions {
  double r_min_px = 1.0;
  double r_max_px = 60.0;
  double exponent = 3.0;
  /// Subsamples per pixel side; edges are box-filtered.
  std::size_t supersample = 4;
  /// Gaussian camera-lens blur applied after rendering (standard deviation in
  /// pixels); 0 disables it.
  double optics_sigma_px = 0.5;
  std::size_t max_discs = 2'000'000;
};

LuminanceImage render_dead_leaves(std::size_t size, std::uint64_t seed, const DeadLeavesOptions& options = {},
                                  double receptors_per_degree = 60.0);

}  // namespace blurfisher
