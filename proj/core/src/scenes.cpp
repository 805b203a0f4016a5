#include "blurfisher/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "blurfisher/errors.hpp"
#include "blurfisher/fisher.hpp"

namespace blurfisher {

namespace {

// Inverse-CDF sample of p(r) ~ r^-e on [lo, hi].
double sample_radius(double u, double lo, double hi, double e) {
  if (std::abs(e - 1.0) < 1e-12) return lo * std::pow(hi / lo, u);
  const double a = std::pow(lo, 1.0 - e);
  const double b = std::pow(hi, 1.0 - e);
  return std::pow(a + u * (b - a), 1.0 / (1.0 - e));
}

}  // namespace

LuminanceImage render_dead_leaves(std::size_t size, std::uint64_t seed, const DeadLeavesOptions& options,
                                  double receptors_per_degree) {
  if (size < 8) throw DomainError("dead-leaves size must be >= 8");
  if (!(options.r_min_px > 0.0) || !(options.r_max_px >= options.r_min_px)) {
    throw DomainError("dead-leaves radii must satisfy 0 < r_min <= r_max");
  }
  if (options.supersample == 0) throw DomainError("supersample must be >= 1");
  if (!(options.optics_sigma_px >= 0.0)) throw DomainError("optics sigma must be >= 0");
  const std::size_t ss = options.supersample;
  const std::size_t n = size * ss;
  const double scale = static_cast<double>(ss);
  std::vector<float> value(n * n, 0.0f);
  std::vector<std::uint8_t> covered(n * n, 0);
  std::size_t remaining = n * n;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t d = 0; d < options.max_discs && remaining > 0; ++d) {
    const double cx = unit(rng) * static_cast<double>(size);
    const double cy = unit(rng) * static_cast<double>(size);
    const double r = sample_radius(unit(rng), options.r_min_px, options.r_max_px, options.exponent);
    const auto gray = static_cast<float>(unit(rng));
    // subsample centers at (i + 0.5) / ss, periodic so the scene tiles
    const double r2 = r * r * scale * scale;
    const long x0 = static_cast<long>(std::floor((cx - r) * scale));
    const long x1 = static_cast<long>(std::ceil((cx + r) * scale));
    const long y0 = static_cast<long>(std::floor((cy - r) * scale));
    const long y1 = static_cast<long>(std::ceil((cy + r) * scale));
    const long ln = static_cast<long>(n);
    for (long yy = y0; yy <= y1; ++yy) {
      const double dy = (static_cast<double>(yy) + 0.5) - cy * scale;
      if (dy * dy > r2) continue;
      const auto row = static_cast<std::size_t>(((yy % ln) + ln) % ln) * n;
      for (long xx = x0; xx <= x1; ++xx) {
        const double dx = (static_cast<double>(xx) + 0.5) - cx * scale;
        if (dx * dx + dy * dy > r2) continue;
        const std::size_t i = row + static_cast<std::size_t>(((xx % ln) + ln) % ln);
        if (covered[i]) continue;
        covered[i] = 1;
        value[i] = gray;
        --remaining;
      }
    }
  }
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!covered[i]) value[i] = 0.5f;
  }

  RealGrid out(size, size);
  const double norm = 1.0 / (scale * scale);
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) {
      double s = 0.0;
      for (std::size_t v = 0; v < ss; ++v) {
        for (std::size_t u = 0; u < ss; ++u) s += value[(y * ss + v) * n + x * ss + u];
      }
      out(x, y) = s * norm;
    }
  }
  LuminanceImage image = LuminanceImage::from_samples(std::move(out), receptors_per_degree);
  if (options.optics_sigma_px > 0.0) {
    const SpreadConvention conv = SpreadConvention::stddev_form();
    image = apply_otf(image, BlurOtf::gaussian(options.optics_sigma_px * image.geometry.pixel_pitch()), conv);
  }
  return image;
}

}  // namespace blurfisher
