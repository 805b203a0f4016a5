#pragma once

#include <cstddef>

#include "blurfisher/image.hpp"

namespace blurfisher {

struct BlurEstimate {
  double sigma_px = 0.0;
  /// Weighted RMS residual of the log-spectrum fit.
  double residual = 0.0;
  std::size_t n_bins_used = 0;
};

struct BlurEstimatorOptions {
  /// Regularization relative to the peak reference spectral power.
  double reg = 1e-3;
  double lo_cpd = 2.0;
  /// Fit stops at the first annulus whose ratio falls below this value.
  double floor_ratio = 0.05;
  /// Annuli whose regularization gain is below this value are treated as noise.
  double min_gain = 0.5;
};

/// Gaussian blur sigma (pixels) relating `blurred` to `reference` by
/// regularized spectral division and a weighted radial log fit.
BlurEstimate estimate_blur_sigma(const LuminanceImage& reference, const LuminanceImage& blurred,
                                 const BlurEstimatorOptions& options = {});
BlurEstimate estimate_blur_sigma(const LuminanceImage& reference, const LuminanceImage& blurred, double reg);

}  // namespace blurfisher
