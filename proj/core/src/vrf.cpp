#include "blurfisher/vrf.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "blurfisher/errors.hpp"
#include "blurfisher/fft.hpp"

namespace blurfisher {
namespace {

void require_spread(double s_G) {
  if (!std::isfinite(s_G) || s_G <= 0.0) {
    throw DomainError("neural spread s_G must be positive, got " + std::to_string(s_G));
  }
}

constexpr Complex kJ{0.0, 1.0};

}  // namespace

Complex vntf_value(double f1, double f2, double s_G, const SpreadConvention& conv) {
  const double rho2 = f1 * f1 + f2 * f2;
  // rho e^{j theta} == f1 + j f2
  return kJ * (2.0 * kPi) * Complex(f1, f2) * std::exp(-conv.c * s_G * s_G * rho2);
}

Complex psf_value(double x1, double x2, double s_G, const SpreadConvention& conv) {
  const double c = conv.c;
  const double s2 = s_G * s_G;
  const double amp = -2.0 * kPi * kPi * kPi / (c * c * s2 * s2);
  return amp * Complex(x1, x2) * std::exp(-kPi * kPi * (x1 * x1 + x2 * x2) / (c * s2));
}

double vntf_peak_frequency(double s_G, const SpreadConvention& conv) {
  require_spread(s_G);
  conv.validate();
  return 1.0 / (s_G * std::sqrt(2.0 * conv.c));
}

VrfKernel make_vntf(double s_G, const FrequencyGrid& grid, const SpreadConvention& conv,
                    int alias_order) {
  require_spread(s_G);
  conv.validate();
  if (alias_order < 0) throw DomainError("alias order must be non-negative");
  VrfKernel k{s_G, conv, ComplexGrid(grid.width(), grid.height()), {}};
  // Replica spacing equals the sampling frequency, 1/pitch = N * df.
  const double rep1 = grid.df1() * static_cast<double>(grid.width());
  const double rep2 = grid.df2() * static_cast<double>(grid.height());
  for (std::size_t y = 0; y < grid.height(); ++y) {
    for (std::size_t x = 0; x < grid.width(); ++x) {
      Complex sum{};
      for (int b = -alias_order; b <= alias_order; ++b) {
        for (int a = -alias_order; a <= alias_order; ++a) {
          sum += vntf_value(grid.f1(x) + a * rep1, grid.f2(y) + b * rep2, s_G, conv);
        }
      }
      k.spectral_taps(x, y) = sum;
    }
  }
  k.spectral_taps(0, 0) = Complex{};
  return k;
}

VrfKernel make_psf(double s_G, const RetinalGeometry& geometry, const SpreadConvention& conv) {
  require_spread(s_G);
  conv.validate();
  geometry.validate();
  VrfKernel k{s_G, conv, {}, ComplexGrid(geometry.grid_width, geometry.grid_height)};
  const double pitch = geometry.pixel_pitch();
  const double area = geometry.cell_area();
  for (std::size_t y = 0; y < geometry.grid_height; ++y) {
    const double x2 = FrequencyGrid::signed_index(y, geometry.grid_height) * pitch;
    for (std::size_t x = 0; x < geometry.grid_width; ++x) {
      const double x1 = FrequencyGrid::signed_index(x, geometry.grid_width) * pitch;
      k.spatial_taps(x, y) = psf_value(x1, x2, s_G, conv) * area;
    }
  }
  return k;
}

RealGrid VisualMap::magnitude() const {
  RealGrid out(values.width(), values.height());
  for (std::size_t i = 0; i < values.size(); ++i) out.data()[i] = std::abs(values.data()[i]);
  return out;
}

RealGrid VisualMap::phase() const {
  RealGrid out(values.width(), values.height());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Complex v = values.data()[i];
    out.data()[i] = std::atan2(v.imag(), v.real());
  }
  return out;
}

RealGrid border_taper(std::size_t width, std::size_t height, double width_samples) {
  RealGrid t(width, height, 1.0);
  if (width_samples <= 0.0) return t;
  auto ramp = [&](std::size_t i, std::size_t n) {
    const double d = std::min(static_cast<double>(i), static_cast<double>(n - 1 - i));
    if (d >= width_samples) return 1.0;
    return 0.5 - 0.5 * std::cos(kPi * d / width_samples);
  };
  for (std::size_t y = 0; y < height; ++y) {
    const double wy = ramp(y, height);
    for (std::size_t x = 0; x < width; ++x) t(x, y) = wy * ramp(x, width);
  }
  return t;
}

static ComplexGrid spectral_response(const VrfKernel& kernel) {
  if (!kernel.spectral_taps.empty()) return kernel.spectral_taps;
  if (!kernel.spatial_taps.empty()) return fft::forward(kernel.spatial_taps);
  throw DomainError("kernel has neither spectral nor spatial taps");
}

VisualMap visual_map(const LuminanceImage& image, const VrfKernel& kernel,
                     const VisualMapOptions& options) {
  const ComplexGrid H = spectral_response(kernel);
  require_same_shape(image.samples, H, "visual_map");
  RealGrid centered = subtract_mean(image.samples);
  if (options.taper_width_arcmin > 0.0) {
    const RealGrid t = border_taper(centered.width(), centered.height(),
                                    options.taper_width_arcmin / image.geometry.pixel_pitch());
    for (std::size_t i = 0; i < centered.size(); ++i) centered.data()[i] *= t.data()[i];
  }
  ComplexGrid spectrum = fft::forward(centered);
  for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum.data()[i] *= H.data()[i];
  return {fft::inverse(spectrum), image.geometry, kernel.s_G};
}

VisualMap steer(VisualMap map, double alpha) {
  const Complex rot = std::polar(1.0, alpha);
  for (auto& v : map.values) v *= rot;
  return map;
}

VrfKernel steer(VrfKernel kernel, double alpha) {
  const Complex rot = std::polar(1.0, alpha);
  for (auto& v : kernel.spectral_taps) v *= rot;
  for (auto& v : kernel.spatial_taps) v *= rot;
  return kernel;
}

std::pair<RealGrid, RealGrid> steer_components(const RealGrid& re, const RealGrid& im,
                                               double alpha) {
  require_same_shape(re, im, "steer_components");
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  RealGrid out_re(re.width(), re.height());
  RealGrid out_im(re.width(), re.height());
  for (std::size_t i = 0; i < re.size(); ++i) {
    const double r = re.data()[i];
    const double m = im.data()[i];
    out_re.data()[i] = r * ca - m * sa;
    out_im.data()[i] = r * sa + m * ca;
  }
  return {std::move(out_re), std::move(out_im)};
}

LuminanceImage invert_map(const VisualMap& map, const VrfKernel& kernel, double reg) {
  if (!(reg >= 0.0) || !std::isfinite(reg)) throw DomainError("regularization must be >= 0");
  const ComplexGrid H = spectral_response(kernel);
  require_same_shape(map.values, H, "invert_map");
  double peak = 0.0;
  for (const auto& h : H) peak = std::max(peak, std::norm(h));
  ComplexGrid Y = fft::forward(map.values);
  const double floor = reg * peak;
  const double zero = 1e-24 * peak;
  for (std::size_t i = 0; i < Y.size(); ++i) {
    const double p = std::norm(H.data()[i]);
    Y.data()[i] = p <= zero ? Complex{} : Y.data()[i] * std::conj(H.data()[i]) / (p + floor);
  }
  Y(0, 0) = Complex{};
  return LuminanceImage{fft::inverse_real(Y), map.geometry};
}

namespace {

Rgb8 hsv_to_rgb(double hue, double s, double v) {
  const double h6 = hue / (2.0 * kPi) * 6.0;
  const int sector = static_cast<int>(std::floor(h6)) % 6;
  const double f = h6 - std::floor(h6);
  const double p = v * (1 - s);
  const double q = v * (1 - s * f);
  const double t = v * (1 - s * (1 - f));
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  auto q8 = [](double c) { return static_cast<std::uint8_t>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0)); };
  return {q8(r), q8(g), q8(b)};
}

}  // namespace

RgbImage render_false_color(const VisualMap& map) {
  RgbImage out(map.values.width(), map.values.height(), Rgb8{0, 0, 0});
  double peak = 0.0;
  for (const auto& v : map.values) peak = std::max(peak, std::abs(v));
  if (peak <= 0.0) return out;
  for (std::size_t i = 0; i < map.values.size(); ++i) {
    const Complex v = map.values.data()[i];
    double dir = std::atan2(v.imag(), v.real());
    dir = std::fmod(dir + 2.0 * kPi, kPi);
    out.data()[i] = hsv_to_rgb(dir, 1.0, std::abs(v) / peak);
  }
  return out;
}

double hue_of(const Rgb8& rgb) {
  const double r = rgb[0] / 255.0, g = rgb[1] / 255.0, b = rgb[2] / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double d = mx - mn;
  if (d <= 0.0) return 0.0;
  double h = 0.0;
  if (mx == r) {
    h = std::fmod((g - b) / d + 6.0, 6.0);
  } else if (mx == g) {
    h = (b - r) / d + 2.0;
  } else {
    h = (r - g) / d + 4.0;
  }
  return h / 6.0 * 2.0 * kPi;
}

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

void put_f32(std::ostream& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw IoError("vmap: truncated file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

float get_f32(std::istream& in) { return std::bit_cast<float>(get_u32(in)); }

}  // namespace

void write_vmap(const std::filesystem::path& path, const VisualMap& map) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write("VMAP", 4);
  put_u32(out, static_cast<std::uint32_t>(map.values.width()));
  put_u32(out, static_cast<std::uint32_t>(map.values.height()));
  put_f32(out, static_cast<float>(map.source_s_G));
  for (const auto& v : map.values) {
    put_f32(out, static_cast<float>(v.real()));
    put_f32(out, static_cast<float>(v.imag()));
  }
  if (!out) throw IoError("write failed for " + path.string());
}

VisualMap read_vmap(const std::filesystem::path& path, double receptors_per_degree) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "VMAP", 4) != 0) {
    throw IoError(path.string() + " is not a VMAP file");
  }
  const std::uint32_t w = get_u32(in);
  const std::uint32_t h = get_u32(in);
  VisualMap map;
  map.source_s_G = get_f32(in);
  map.geometry = {receptors_per_degree, w, h};
  map.values = ComplexGrid(w, h);
  for (auto& v : map.values) {
    const float re = get_f32(in);
    const float im = get_f32(in);
    v = Complex(re, im);
  }
  return map;
}

}  // namespace blurfisher
