#include "blurfisher/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>

#include "blurfisher/errors.hpp"
#include "blurfisher/fft.hpp"
#include "blurfisher/image_io.hpp"
#include "blurfisher/quadrature.hpp"

namespace blurfisher {

DetailWindow DetailWindow::gaussian(double sigma_arcmin, const RetinalGeometry& geometry,
                                    double truncate_sigmas) {
  if (!(sigma_arcmin > 0.0) || !std::isfinite(sigma_arcmin)) {
    throw DomainError("window sigma must be positive");
  }
  geometry.validate();
  const double sigma_px = sigma_arcmin / geometry.pixel_pitch();
  const auto r = static_cast<std::size_t>(std::ceil(truncate_sigmas * sigma_px));
  DetailWindow w;
  w.weights = RealGrid(2 * r + 1, 2 * r + 1);
  w.support_radius_arcmin = static_cast<double>(r) * geometry.pixel_pitch();
  const double limit2 = (truncate_sigmas * sigma_px) * (truncate_sigmas * sigma_px);
  for (std::size_t y = 0; y < w.weights.height(); ++y) {
    for (std::size_t x = 0; x < w.weights.width(); ++x) {
      const double dx = static_cast<double>(x) - static_cast<double>(r);
      const double dy = static_cast<double>(y) - static_cast<double>(r);
      const double d2 = dx * dx + dy * dy;
      w.weights(x, y) = d2 <= limit2 ? std::exp(-d2 / (2.0 * sigma_px * sigma_px)) : 0.0;
    }
  }
  return w;
}

DetailWindow DetailWindow::identity() {
  DetailWindow w;
  w.weights = RealGrid(1, 1, 1.0);
  return w;
}

DetailWindow DetailWindow::whole() {
  DetailWindow w;
  w.whole_image = true;
  return w;
}

void DetailWindow::validate() const {
  if (whole_image) return;
  if (weights.empty() || weights.width() != weights.height() || weights.width() % 2 == 0) {
    throw DomainError("detail window must be a non-empty odd-sided square grid");
  }
  double energy = 0.0;
  for (double v : weights) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("detail window weights must be finite and >= 0");
    energy += v * v;
  }
  if (energy <= 0.0) throw DomainError("detail window has no weight");
}

PfiField detail_energy_map(const VisualMap& map, const DetailWindow& window) {
  window.validate();
  const std::size_t w = map.values.width();
  const std::size_t h = map.values.height();
  RealGrid energy(w, h);
  for (std::size_t i = 0; i < energy.size(); ++i) energy.data()[i] = std::norm(map.values.data()[i]);

  PfiField field;
  field.geometry = map.geometry;
  if (window.whole_image) {
    double total = 0.0;
    for (double e : energy) total += e;
    field.lambda = RealGrid(w, h, total);
    return field;
  }
  const std::size_t r = window.radius();
  if (2 * r + 1 > w || 2 * r + 1 > h) {
    throw DomainError("detail window (" + std::to_string(2 * r + 1) + " samples) exceeds the map grid");
  }
  if (r == 0) {
    const double w00 = window.weights(0, 0);
    for (auto& e : energy) e *= w00 * w00;
    field.lambda = std::move(energy);
    return field;
  }
  RealGrid kernel(w, h);
  for (std::size_t y = 0; y < window.weights.height(); ++y) {
    for (std::size_t x = 0; x < window.weights.width(); ++x) {
      const long ux = static_cast<long>(x) - static_cast<long>(r);
      const long uy = static_cast<long>(y) - static_cast<long>(r);
      const auto kx = static_cast<std::size_t>((ux + static_cast<long>(w)) % static_cast<long>(w));
      const auto ky = static_cast<std::size_t>((uy + static_cast<long>(h)) % static_cast<long>(h));
      const double wv = window.weights(x, y);
      kernel(kx, ky) = wv * wv;
    }
  }
  ComplexGrid E = fft::forward(energy);
  const ComplexGrid K = fft::forward(kernel);
  for (std::size_t i = 0; i < E.size(); ++i) E.data()[i] *= std::conj(K.data()[i]);
  field.lambda = fft::inverse_real(E);
  for (auto& v : field.lambda) v = std::max(v, 0.0);
  return field;
}

PfiField pfi_and_emin(PfiField field, double sigma_v2) {
  if (!(sigma_v2 > 0.0) || !std::isfinite(sigma_v2)) {
    throw DomainError("noise variance must be positive, got " + std::to_string(sigma_v2));
  }
  field.noise_variance = sigma_v2;
  field.psi = RealGrid(field.lambda.width(), field.lambda.height());
  field.e_min = RealGrid(field.lambda.width(), field.lambda.height());
  for (std::size_t i = 0; i < field.lambda.size(); ++i) {
    const double psi = field.lambda.data()[i] / sigma_v2;
    field.psi.data()[i] = psi;
    field.e_min.data()[i] = psi > 0.0 ? 1.0 / std::sqrt(psi) : std::numeric_limits<double>::infinity();
  }
  return field;
}

double spatial_energy(const VisualMap& map) {
  double total = 0.0;
  for (const auto& v : map.values) total += std::norm(v);
  return total * map.geometry.cell_area();
}

double spectral_pfi(const ComplexGrid& detail_dft, const RetinalGeometry& geometry, double s_G,
                    const BlurOtf& otf, double sigma_v2, const SpreadConvention& conv) {
  if (!(sigma_v2 > 0.0)) throw DomainError("noise variance must be positive");
  if (detail_dft.width() != geometry.grid_width || detail_dft.height() != geometry.grid_height) {
    throw ShapeError("spectral_pfi: spectrum does not match the geometry grid");
  }
  const FrequencyGrid grid(geometry);
  const VrfKernel kernel = make_vntf(s_G, grid, conv);
  const double area = geometry.cell_area();
  double total = 0.0;
  for (std::size_t y = 0; y < grid.height(); ++y) {
    for (std::size_t x = 0; x < grid.width(); ++x) {
      const double d2 = std::norm(detail_dft(x, y) * area);
      if (d2 == 0.0) continue;
      const double b2 = std::norm(otf_eval(otf, grid.f1(x), grid.f2(y), conv));
      total += std::norm(kernel.spectral_taps(x, y)) * d2 * b2;
    }
  }
  return total * grid.bin_area() / sigma_v2;
}

double expected_pfi_ratio(double s_B, double s_G) {
  if (!(s_G > 0.0) || !std::isfinite(s_G)) throw DomainError("s_G must be positive");
  if (!(s_B >= 0.0)) throw DomainError("s_B must be non-negative");
  if (std::isinf(s_B)) return 0.0;
  return s_G * s_G / (s_G * s_G + s_B * s_B);
}

double NaturalSpectrumModel::azimuth_integral(std::size_t nodes) const {
  return integrate_periodic(azimuth_profile, nodes);
}

void NaturalSpectrumModel::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("spectral exponent beta must be > 0");
  if (!azimuth_profile) throw DomainError("azimuth profile is empty");
  for (int i = 0; i < 64; ++i) {
    if (azimuth_profile(2.0 * kPi * i / 64.0) < 0.0) throw DomainError("azimuth profile must be >= 0");
  }
  if (!(azimuth_integral() > 0.0)) throw DomainError("azimuth profile integrates to zero");
}

LuminanceImage synth_natural_image(double beta, std::size_t size, std::uint64_t seed,
                                   double receptors_per_degree) {
  NaturalSpectrumModel model;
  model.beta = beta;
  return synth_natural_image(model, size, seed, receptors_per_degree);
}

LuminanceImage synth_natural_image(const NaturalSpectrumModel& model, std::size_t size,
                                   std::uint64_t seed, double receptors_per_degree) {
  model.validate();
  if (size < 16) throw DomainError("synthetic image size must be >= 16");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RealGrid noise(size, size);
  for (auto& v : noise) v = normal(rng);
  ComplexGrid spec = fft::forward(noise);
  const RetinalGeometry geometry = RetinalGeometry::square(size, receptors_per_degree);
  const FrequencyGrid grid(geometry);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      const double rho = grid.rho(x, y);
      Complex& v = spec(x, y);
      const double mag = std::abs(v);
      if (rho == 0.0 || mag == 0.0) {
        v = Complex{};
        continue;
      }
      const double amp = std::pow(rho, -model.beta) * std::sqrt(model.azimuth_profile(grid.theta(x, y)));
      v *= amp / mag;
    }
  }
  RealGrid field = fft::inverse_real(spec);
  field = subtract_mean(field);
  double var = 0.0;
  for (double v : field) var += v * v;
  var /= static_cast<double>(field.size());
  const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 0.0;
  for (auto& v : field) v *= scale;
  return LuminanceImage::from_samples(std::move(field), receptors_per_degree);
}

RadialSpectrum radial_amplitude_spectrum(const LuminanceImage& image) {
  const FrequencyGrid grid(image.geometry);
  const ComplexGrid spec = fft::forward(subtract_mean(image.samples));
  const double step = std::min(grid.df1(), grid.df2());
  const std::size_t bins = static_cast<std::size_t>(std::ceil(std::hypot(0.5 / image.geometry.pixel_pitch(),
                                                                          0.5 / image.geometry.pixel_pitch()) /
                                                               step)) + 1;
  std::vector<double> power(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t y = 0; y < grid.height(); ++y) {
    for (std::size_t x = 0; x < grid.width(); ++x) {
      const auto k = static_cast<std::size_t>(std::lround(grid.rho(x, y) / step));
      if (k >= bins) continue;
      power[k] += std::norm(spec(x, y));
      ++count[k];
    }
  }
  RadialSpectrum out;
  for (std::size_t k = 1; k < bins; ++k) {
    if (count[k] == 0) continue;
    out.rho.push_back(static_cast<double>(k) * step);
    out.amplitude.push_back(std::sqrt(power[k] / static_cast<double>(count[k])));
    out.count.push_back(count[k]);
  }
  return out;
}

double spectral_slope(const LuminanceImage& image, double lo_cpd, double hi_cpd) {
  if (hi_cpd <= 0.0) hi_cpd = image.geometry.nyquist_cpd() / 2.0;
  const RadialSpectrum rs = radial_amplitude_spectrum(image);
  const double lo = cpd_to_cpam(lo_cpd);
  const double hi = cpd_to_cpam(hi_cpd);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < rs.rho.size(); ++i) {
    if (rs.rho[i] < lo || rs.rho[i] > hi || rs.amplitude[i] <= 0.0) continue;
    const double lx = std::log(rs.rho[i]);
    const double ly = std::log(rs.amplitude[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw DomainError("too few annuli in the slope fit range");
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

LuminanceImage apply_otf(const LuminanceImage& image, const BlurOtf& otf, const SpreadConvention& conv) {
  const FrequencyGrid grid(image.geometry);
  ComplexGrid spec = fft::forward(image.samples);
  for (std::size_t y = 0; y < grid.height(); ++y) {
    for (std::size_t x = 0; x < grid.width(); ++x) spec(x, y) *= otf_eval(otf, grid.f1(x), grid.f2(y), conv);
  }
  return LuminanceImage{fft::inverse_real(spec), image.geometry};
}

void write_pfi_csv(const std::filesystem::path& path, const PfiField& field) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "p_x,p_y,lambda,psi,e_min\n";
  const double pitch = field.geometry.pixel_pitch();
  char buf[160];
  for (std::size_t y = 0; y < field.lambda.height(); ++y) {
    for (std::size_t x = 0; x < field.lambda.width(); ++x) {
      const double psi = field.has_pfi() ? field.psi(x, y) : 0.0;
      const double e = field.has_pfi() ? field.e_min(x, y) : std::numeric_limits<double>::infinity();
      std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.9g,%.9g,%s\n", static_cast<double>(x) * pitch,
                    static_cast<double>(y) * pitch, field.lambda(x, y), psi,
                    std::isinf(e) ? "inf" : std::to_string(e).c_str());
      out << buf;
    }
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_pfi_png(const std::filesystem::path& path, const PfiField& field) {
  const RealGrid& src = field.has_pfi() ? field.psi : field.lambda;
  double peak = 0.0;
  for (double v : src) peak = std::max(peak, v);
  RealGrid norm(src.width(), src.height());
  for (std::size_t i = 0; i < src.size(); ++i) norm.data()[i] = peak > 0.0 ? src.data()[i] / peak : 0.0;
  write_luminance(path, norm, 8, false);
}

}  // namespace blurfisher
