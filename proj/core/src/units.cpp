#include "blurfisher/units.hpp"

#include <cmath>

#include "blurfisher/errors.hpp"

namespace blurfisher {
namespace {

void require_positive_finite(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw DomainError(std::string(what) + " must be positive and finite, got " +
                      std::to_string(v));
  }
}

}  // namespace

RetinalGeometry RetinalGeometry::square(std::size_t side, double receptors_per_degree) {
  RetinalGeometry g{receptors_per_degree, side, side};
  g.validate();
  return g;
}

void RetinalGeometry::validate() const {
  require_positive_finite(receptors_per_degree, "receptors_per_degree");
}

FrequencyGrid::FrequencyGrid(const RetinalGeometry& geometry)
    : width_(geometry.grid_width), height_(geometry.grid_height) {
  geometry.validate();
  if (width_ == 0 || height_ == 0) throw DomainError("frequency grid needs a non-empty geometry");
  df1_ = 1.0 / (static_cast<double>(width_) * geometry.pixel_pitch());
  df2_ = 1.0 / (static_cast<double>(height_) * geometry.pixel_pitch());
}

double FrequencyGrid::rho(std::size_t x, std::size_t y) const noexcept {
  return std::hypot(f1(x), f2(y));
}

double FrequencyGrid::theta(std::size_t x, std::size_t y) const noexcept {
  return std::atan2(f2(y), f1(x));
}

double SpreadConvention::matched_k(double c) {
  require_positive_finite(c, "convention constant c");
  return kPi * std::sqrt(2.0 / c);
}

SpreadConvention SpreadConvention::matched(double c) { return {c, matched_k(c)}; }

SpreadConvention SpreadConvention::named(std::string_view name) {
  if (name == "pi") return pi_form();
  if (name == "unit") return unit_form();
  if (name == "stddev") return stddev_form();
  if (name == "angular") return angular_form();
  throw DomainError("unknown spread convention '" + std::string(name) +
                    "' (expected pi, unit, stddev or angular)");
}

std::string SpreadConvention::name() const {
  for (const char* n : {"pi", "unit", "stddev", "angular"}) {
    const SpreadConvention ref = named(n);
    if (std::abs(ref.c - c) <= 1e-12 * ref.c && std::abs(ref.k - k) <= 1e-12 * ref.k) return n;
  }
  return "custom";
}

void SpreadConvention::validate() const {
  require_positive_finite(c, "convention constant c");
  require_positive_finite(k, "convention constant k");
}

double ViewingDistance::gamma() const {
  require_positive_finite(delta0, "nominal viewing distance");
  require_positive_finite(delta, "viewing distance");
  return delta0 / delta;
}

ViewingDistance ViewingDistance::from_gamma(double gamma) {
  require_positive_finite(gamma, "gamma");
  return {1.0, 1.0 / gamma};
}

double gamma_from_pixels_per_degree(double ppd_at_screen) {
  require_positive_finite(ppd_at_screen, "pixels per degree");
  return kArcminPerDegree / ppd_at_screen;
}

double blur_sigma_px_to_spread_arcmin(double sigma_px, const RetinalGeometry& geometry,
                                      const SpreadConvention& conv) {
  if (!std::isfinite(sigma_px) || sigma_px < 0.0) {
    throw DomainError("blur sigma must be non-negative, got " + std::to_string(sigma_px));
  }
  geometry.validate();
  conv.validate();
  return conv.k * sigma_px * geometry.pixel_pitch();
}

double spread_arcmin_to_blur_sigma_px(double spread_arcmin, const RetinalGeometry& geometry,
                                      const SpreadConvention& conv) {
  if (!std::isfinite(spread_arcmin) || spread_arcmin < 0.0) {
    throw DomainError("spread must be non-negative, got " + std::to_string(spread_arcmin));
  }
  geometry.validate();
  conv.validate();
  return spread_arcmin / (conv.k * geometry.pixel_pitch());
}

}  // namespace blurfisher
