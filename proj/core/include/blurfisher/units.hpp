#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace blurfisher {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kArcminPerDegree = 60.0;

/// Ideal foveal retina: a rectangular lattice of receptors at uniform angular spacing.
/// Spatial quantities are arcmin, frequencies cycles/arcmin.
struct RetinalGeometry {
  double receptors_per_degree = 60.0;
  std::size_t grid_width = 0;
  std::size_t grid_height = 0;

  static RetinalGeometry square(std::size_t side, double receptors_per_degree = 60.0);

  /// arcmin per sample
  double pixel_pitch() const noexcept { return kArcminPerDegree / receptors_per_degree; }
  /// cycles/arcmin
  double nyquist() const noexcept { return 0.5 / pixel_pitch(); }
  double nyquist_cpd() const noexcept { return receptors_per_degree / 2.0; }
  double cell_area() const noexcept { return pixel_pitch() * pixel_pitch(); }
  std::size_t sample_count() const noexcept { return grid_width * grid_height; }

  void validate() const;
  bool operator==(const RetinalGeometry&) const = default;
};

/// Discrete frequency coordinates conjugate to a RetinalGeometry, in FFT bin order.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(const RetinalGeometry& geometry);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }

  /// Horizontal frequency of column x (cycles/arcmin).
  double f1(std::size_t x) const noexcept { return signed_index(x, width_) * df1_; }
  /// Vertical frequency of row y (cycles/arcmin).
  double f2(std::size_t y) const noexcept { return signed_index(y, height_) * df2_; }
  double rho(std::size_t x, std::size_t y) const noexcept;
  double theta(std::size_t x, std::size_t y) const noexcept;
  double df1() const noexcept { return df1_; }
  double df2() const noexcept { return df2_; }
  double bin_area() const noexcept { return df1_ * df2_; }

  static double signed_index(std::size_t i, std::size_t n) noexcept {
    return i < (n + 1) / 2 ? static_cast<double>(i)
                           : static_cast<double>(i) - static_cast<double>(n);
  }

 private:
  std::size_t width_;
  std::size_t height_;
  double df1_;
  double df2_;
};

/// Relates a spread s to Gaussian spectra e^{-c s^2 rho^2} and to pixel-space
/// standard deviations (s = k * sigma * pitch).
struct SpreadConvention {
  double c = kPi;
  double k = 2.5066282746310002;  // sqrt(2 pi)

  /// k such that e^{-c s^2 rho^2} equals the standard-deviation Gaussian OTF
  /// e^{-2 pi^2 sigma^2 rho^2}.
  static double matched_k(double c);
  static SpreadConvention matched(double c);

  /// Gaussian PSF e^{-pi r^2 / s^2}; space and frequency forms are an exact pair. Default.
  static SpreadConvention pi_form() { return matched(kPi); }
  /// Literal e^{-s^2 rho^2} spectrum.
  static SpreadConvention unit_form() { return matched(1.0); }
  /// s is the standard deviation of the Gaussian PSF.
  static SpreadConvention stddev_form() { return matched(2.0 * kPi * kPi); }
  /// e^{-s^2 omega^2} with omega in radians/arcmin.
  static SpreadConvention angular_form() { return matched(4.0 * kPi * kPi); }

  /// Accepts "pi", "unit", "stddev", "angular".
  static SpreadConvention named(std::string_view name);
  std::string name() const;

  void validate() const;
  bool operator==(const SpreadConvention&) const = default;
};

struct ViewingDistance {
  double delta0 = 1.0;
  double delta = 1.0;

  double gamma() const;
  static ViewingDistance from_gamma(double gamma);
};

/// Ratio of nominal (60/degree) to observed angular pixel density.
double gamma_from_pixels_per_degree(double ppd_at_screen);

double blur_sigma_px_to_spread_arcmin(double sigma_px, const RetinalGeometry& geometry,
                                      const SpreadConvention& conv);
double spread_arcmin_to_blur_sigma_px(double spread_arcmin, const RetinalGeometry& geometry,
                                      const SpreadConvention& conv);

inline double cpd_to_cpam(double cpd) noexcept { return cpd / kArcminPerDegree; }
inline double cpam_to_cpd(double cpam) noexcept { return cpam * kArcminPerDegree; }

}  // namespace blurfisher
