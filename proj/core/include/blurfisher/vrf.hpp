#pragma once

#include <filesystem>
#include <utility>

#include "blurfisher/grid.hpp"
#include "blurfisher/image.hpp"
#include "blurfisher/units.hpp"

namespace blurfisher {

/// Complex Gaussian-smoothed gradient filter.
///
/// The transfer function is H(rho, theta) = j 2 pi rho e^{-c s_G^2 rho^2} e^{j theta}:
/// a complex gradient cascaded with Gaussian smoothing of spread s_G. It is polar
/// separable, has zero DC response, and rotating the input by alpha multiplies
/// the output by e^{j alpha}.
struct VrfKernel {
  double s_G = 2.5;
  SpreadConvention convention{};
  /// Frequency response on the FFT grid (empty unless built by make_vntf).
  ComplexGrid spectral_taps;
  /// Discrete spatial taps h(p) * cell_area with the origin at index (0, 0)
  /// (empty unless built by make_psf).
  ComplexGrid spatial_taps;
};

/// Analytic transfer function at (f1, f2) cycles/arcmin.
Complex vntf_value(double f1, double f2, double s_G, const SpreadConvention& conv);

/// Analytic point spread function at (x1, x2) arcmin; the exact inverse
/// transform of vntf_value under the same convention:
/// h = -(2 pi^3 / (c^2 s_G^4)) r e^{-pi^2 r^2 / (c s_G^2)} e^{j phi}.
Complex psf_value(double x1, double x2, double s_G, const SpreadConvention& conv);

/// Peak of |H| along rho, cycles/arcmin: 1 / (s_G sqrt(2c)).
double vntf_peak_frequency(double s_G, const SpreadConvention& conv);

/// Samples the transfer function on the grid. Each bin holds the sum of the
/// analytic response over `alias_order` lattice replicas in each direction, which
/// is the DTFT of the sampled PSF; alias_order = 0 gives plain point sampling.
/// The DC bin is exactly zero.
VrfKernel make_vntf(double s_G, const FrequencyGrid& grid, const SpreadConvention& conv,
                    int alias_order = 2);

/// Samples the point spread function on the retinal lattice.
VrfKernel make_psf(double s_G, const RetinalGeometry& geometry, const SpreadConvention& conv);

struct VisualMap {
  ComplexGrid values;
  RetinalGeometry geometry;
  double source_s_G = 0.0;

  RealGrid magnitude() const;
  /// atan2(Im, Re) in (-pi, pi].
  RealGrid phase() const;
};

struct VisualMapOptions {
  /// Raised-cosine border taper applied after mean removal; 0 disables it.
  double taper_width_arcmin = 0.0;
};

/// y = I * h evaluated as a frequency-domain product with periodic boundaries.
/// The mean of I is removed first.
VisualMap visual_map(const LuminanceImage& image, const VrfKernel& kernel,
                     const VisualMapOptions& options = {});

/// Raised-cosine border window: 1 in the interior, falling to 0 at the edges.
RealGrid border_taper(std::size_t width, std::size_t height, double width_samples);

/// Multiplies every value by e^{j alpha}.
VisualMap steer(VisualMap map, double alpha);
VrfKernel steer(VrfKernel kernel, double alpha);

/// Steering written as a real linear combination of the two component maps:
/// Re' = Re cos a - Im sin a, Im' = Re sin a + Im cos a.
std::pair<RealGrid, RealGrid> steer_components(const RealGrid& re, const RealGrid& im,
                                               double alpha);

/// Regularized spectral division Y conj(H) / (|H|^2 + reg max|H|^2). Bins where
/// the divisor vanishes (DC, and the odd-kernel zeros at Nyquist) are set to 0.
LuminanceImage invert_map(const VisualMap& map, const VrfKernel& kernel, double reg);

/// Magnitude coded as value (normalized to the map maximum), gradient direction
/// folded into [0, pi) coded as hue angle, full saturation.
RgbImage render_false_color(const VisualMap& map);

/// Hue angle in radians [0, 2 pi) of an 8-bit RGB color; used to read back
/// false-color renderings.
double hue_of(const Rgb8& rgb);

/// Raw map file: "VMAP", u32 width, u32 height, f32 s_G, then interleaved f32
/// (re, im) in row-major order. All little-endian.
void write_vmap(const std::filesystem::path& path, const VisualMap& map);
VisualMap read_vmap(const std::filesystem::path& path, double receptors_per_degree = 60.0);

}  // namespace blurfisher
