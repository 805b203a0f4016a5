#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>

#include "blurfisher/blur.hpp"
#include "blurfisher/grid.hpp"
#include "blurfisher/image.hpp"
#include "blurfisher/vrf.hpp"

namespace blurfisher {

/// Sampling window that isolates a detail of the visual map. Weights are stored
/// on an odd-sided grid centered at (radius, radius).
struct DetailWindow {
  RealGrid weights;
  double support_radius_arcmin = 0.0;
  /// w == 1 over the whole (periodic) map; `weights` is unused.
  bool whole_image = false;

  static DetailWindow gaussian(double sigma_arcmin, const RetinalGeometry& geometry,
                               double truncate_sigmas = 3.0);
  static DetailWindow identity();
  static DetailWindow whole();

  std::size_t radius() const noexcept { return weights.width() / 2; }
  void validate() const;
};

inline constexpr double kDefaultWindowSigma = 8.0;  // arcmin

struct PfiField {
  RealGrid lambda;
  double noise_variance = 0.0;
  RealGrid psi;
  /// +infinity where psi == 0.
  RealGrid e_min;
  RetinalGeometry geometry;

  bool has_pfi() const noexcept { return !psi.empty(); }
};

/// lambda(p) = sum_u w(u)^2 |y(p + u)|^2 with periodic wrap, evaluated as an FFT
/// correlation for every p.
PfiField detail_energy_map(const VisualMap& map, const DetailWindow& window);

/// psi = lambda / sigma_V^2 and e_min = psi^{-1/2}.
PfiField pfi_and_emin(PfiField field, double sigma_v2 = 1.0);

/// Sum of |y|^2 times the cell area: the spatial side of the Parseval identity.
double spatial_energy(const VisualMap& map);

/// Discrete frequency-domain PFI
///   (1/sigma_V^2) sum_f |H(f)|^2 |D(f)|^2 |B(f)|^2 df1 df2,
/// with D the continuous-transform estimate cell_area * DFT(detail) and H the
/// kernel of make_vntf (|H|^2 carries the 4 pi^2 rho^2 |G|^2 factor).
/// `detail_dft` is the unnormalized DFT of the zero-mean luminance detail.
double spectral_pfi(const ComplexGrid& detail_dft, const RetinalGeometry& geometry, double s_G,
                    const BlurOtf& otf, double sigma_v2 = 1.0, const SpreadConvention& conv = {});

/// Expected PFI ratio for natural scenes under isotropic Gaussian blur.
double expected_pfi_ratio(double s_B, double s_G);

/// Expected energy spectrum f(theta) / rho^{2 beta} of natural-image details.
struct NaturalSpectrumModel {
  double beta = 1.0;
  std::function<double(double)> azimuth_profile = [](double) { return 1.0; };

  /// F = integral of f(theta) over [0, 2 pi).
  double azimuth_integral(std::size_t nodes = 512) const;
  void validate() const;
};

/// Random-phase field with amplitude spectrum proportional to rho^{-beta} (times
/// sqrt(f(theta))), zero DC and unit variance. The phases come from the DFT of
/// white noise drawn from a seeded mt19937_64, so the field is exactly real.
LuminanceImage synth_natural_image(double beta, std::size_t size, std::uint64_t seed,
                                   double receptors_per_degree = 60.0);
LuminanceImage synth_natural_image(const NaturalSpectrumModel& model, std::size_t size,
                                   std::uint64_t seed, double receptors_per_degree = 60.0);

struct RadialSpectrum {
  std::vector<double> rho;        // cycles/arcmin, annulus centers
  std::vector<double> amplitude;  // RMS spectral amplitude in the annulus
  std::vector<std::size_t> count;
};

/// Annular average of the amplitude spectrum, annuli one bin wide.
RadialSpectrum radial_amplitude_spectrum(const LuminanceImage& image);

/// Least-squares slope of log amplitude versus log rho over [lo_cpd, hi_cpd];
/// hi_cpd <= 0 selects half the Nyquist frequency.
double spectral_slope(const LuminanceImage& image, double lo_cpd = 4.0, double hi_cpd = 0.0);

/// Blurs an image by multiplying its spectrum by the OTF (periodic boundaries).
LuminanceImage apply_otf(const LuminanceImage& image, const BlurOtf& otf,
                         const SpreadConvention& conv = {});

/// CSV with columns p_x,p_y,lambda,psi,e_min (p in arcmin).
void write_pfi_csv(const std::filesystem::path& path, const PfiField& field);
/// Grayscale heatmap of psi (or lambda) normalized to its maximum.
void write_pfi_png(const std::filesystem::path& path, const PfiField& field);

}  // namespace blurfisher
