#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blurfisher/grid.hpp"
#include "blurfisher/units.hpp"

namespace blurfisher {

struct IsotropicGaussian {
  double s_B = 0.0;  // arcmin
};

/// Gaussian blur with separate spreads along the horizontal (f1) and vertical (f2) axes.
struct AstigmaticGaussian {
  double s_H = 0.0;
  double s_V = 0.0;
};

/// Uniform disc PSF of radius R (out-of-focus blur).
struct Disc {
  double R = 0.0;
};

/// Pure displacement of the PSF; a phase-only OTF.
struct Translation {
  double dx = 0.0;
  double dy = 0.0;
};

struct BlurOtf;

/// Cascade of subsystems; the overall OTF is the product of the members.
struct Product {
  std::vector<BlurOtf> members;
};

struct BlurOtf {
  std::variant<IsotropicGaussian, AstigmaticGaussian, Disc, Translation, Product> variant;

  static BlurOtf none() { return {Product{}}; }
  static BlurOtf gaussian(double s_B) { return {IsotropicGaussian{s_B}}; }
  static BlurOtf astigmatic(double s_H, double s_V) { return {AstigmaticGaussian{s_H, s_V}}; }
  static BlurOtf disc(double R) { return {Disc{R}}; }
  static BlurOtf translation(double dx, double dy) { return {Translation{dx, dy}}; }
  static BlurOtf product(std::vector<BlurOtf> members) { return {Product{std::move(members)}}; }

  /// |B| depends on rho only.
  bool is_isotropic() const;
  void validate() const;
  std::string describe() const;
};

/// Parses "gauss:S", "astig:SH:SV", "disc:R", "shift:DX:DY", comma separated for a product.
BlurOtf parse_otf(std::string_view spec);

/// OTF at (f1, f2) cycles/arcmin. Gaussian members use e^{-c s^2 rho^2}; the astigmatic
/// form is e^{-c (s_H^2 f1^2 + s_V^2 f2^2)}. Every variant is 1 at DC.
Complex otf_eval(const BlurOtf& otf, double f1, double f2, const SpreadConvention& conv = {});

/// Samples the OTF on a frequency grid.
ComplexGrid otf_grid(const BlurOtf& otf, const FrequencyGrid& grid, const SpreadConvention& conv = {});

struct EnergyOptions {
  double rel_tol = 1e-9;
  std::size_t max_subdivisions = 4000;
  std::size_t azimuth_nodes = 256;
  /// The radial integral stops where the neural weight falls below this.
  double weight_cutoff = 1e-14;
};

/// VNTF-weighted OTF energy  int int e^{-2 c s_G^2 rho^2} |B|^2 rho drho dtheta.
/// Isotropic variants integrate the azimuth analytically; the rest use a periodic rule.
double weighted_otf_energy(const BlurOtf& otf, double s_G, const SpreadConvention& conv = {},
                           const EnergyOptions& options = {});

/// Closed form of the weighted energy of an isotropic Gaussian: 2 pi / (4 c (s_G^2 + s_B^2)).
double gaussian_weighted_energy(double s_B, double s_G, const SpreadConvention& conv = {});

/// Spread s'_B of the isotropic Gaussian with the same weighted energy as `otf`.
double equiv_spread_generic(const BlurOtf& otf, double s_G, const SpreadConvention& conv = {},
                            const EnergyOptions& options = {});

/// Disc specialization; quadrature panels are kept below 1/(8R) to follow the
/// Bessel oscillation.
double equiv_spread_disc(double R, double s_G, const SpreadConvention& conv = {});

/// Closed form for the astigmatic Gaussian:
/// sqrt(sqrt(s_G^4 + s_G^2 (s_H^2 + s_V^2) + s_H^2 s_V^2) - s_G^2).
double equiv_spread_astig(double s_H, double s_V, double s_G);

struct DefocusParams {
  double pupil_mm = 3.0;
  double diopters = 0.0;

  void validate() const;
};

/// Geometric blur-disc radius in arcmin, R = 1.71 p |D|.
double defocus_radius(const DefocusParams& params);

/// Equivalent Gaussian spread from the 3/8 rule applied to the disc radius, 0.64 p |D|.
double defocus_spread(const DefocusParams& params);

struct EquivalenceRow {
  double R;
  double s_B;
  double ratio;
};

/// Disc-to-Gaussian equivalence curve sampled at the given radii.
std::vector<EquivalenceRow> disc_equivalence_curve(const std::vector<double>& radii, double s_G,
                                                   const SpreadConvention& conv = {});

}  // namespace blurfisher
