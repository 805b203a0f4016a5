#include "blurfisher/blur_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "blurfisher/errors.hpp"
#include "blurfisher/fft.hpp"

namespace blurfisher {

BlurEstimate estimate_blur_sigma(const LuminanceImage& reference, const LuminanceImage& blurred, double reg) {
  BlurEstimatorOptions options;
  options.reg = reg;
  return estimate_blur_sigma(reference, blurred, options);
}

BlurEstimate estimate_blur_sigma(const LuminanceImage& reference, const LuminanceImage& blurred,
                                 const BlurEstimatorOptions& options) {
  require_same_shape(reference.samples, blurred.samples, "estimate_blur_sigma");
  if (!(options.reg > 0.0) || !std::isfinite(options.reg)) throw DomainError("reg must be finite and > 0");
  const std::size_t w = reference.width();
  const std::size_t h = reference.height();
  if (w < 8 || h < 8) throw ShapeError("images must be at least 8x8 for blur estimation");

  const ComplexGrid X = fft::forward(subtract_mean(reference.samples));
  const ComplexGrid Y = fft::forward(subtract_mean(blurred.samples));
  double peak = 0.0;
  for (const auto& v : X) peak = std::max(peak, std::norm(v));
  double total = 0.0;
  for (const auto& v : reference.samples) total += v * v;
  if (!(peak > 1e-24 * std::max(total, 1e-300))) throw EstimationError("reference spectrum is degenerate");
  const double r = options.reg * peak;

  // Frequencies in cycles/pixel; annuli one bin of the coarser axis wide.
  const double step = 1.0 / static_cast<double>(std::min(w, h));
  const std::size_t bins = static_cast<std::size_t>(0.5 / step) + 1;
  std::vector<double> num(bins, 0.0), gain(bins, 0.0), power(bins, 0.0);
  std::vector<std::size_t> count(bins, 0);
  for (std::size_t y = 0; y < h; ++y) {
    const double fy = FrequencyGrid::signed_index(y, h) / static_cast<double>(h);
    for (std::size_t x = 0; x < w; ++x) {
      const double fx = FrequencyGrid::signed_index(x, w) / static_cast<double>(w);
      const auto k = static_cast<std::size_t>(std::lround(std::hypot(fx, fy) / step));
      if (k >= bins) continue;
      const double x2 = std::norm(X(x, y));
      num[k] += std::abs(Y(x, y) * std::conj(X(x, y))) / (x2 + r);
      gain[k] += x2 / (x2 + r);
      power[k] += x2;
      ++count[k];
    }
  }

  const double cpd_to_cpp = 1.0 / reference.geometry.receptors_per_degree;
  const double lo = options.lo_cpd * cpd_to_cpp;
  const double hi = 0.25;
  std::vector<double> us, zs, ws;
  for (std::size_t k = 1; k < bins; ++k) {
    const double rho = static_cast<double>(k) * step;
    if (rho < lo) continue;
    if (rho > hi) break;
    if (count[k] == 0) continue;
    const double t = gain[k] / static_cast<double>(count[k]);
    if (t < options.min_gain) continue;
    // dividing by the same estimator's response to an identity blur removes the regularization bias
    const double b = num[k] / gain[k];
    if (b < options.floor_ratio) break;
    us.push_back(-2.0 * kPi * kPi * rho * rho);
    zs.push_back(std::log(b));
    ws.push_back(power[k]);
  }
  if (us.empty()) throw EstimationError("no annuli above the noise floor in the fit range");

  double suz = 0.0, suu = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    suz += ws[i] * us[i] * zs[i];
    suu += ws[i] * us[i] * us[i];
  }
  const double s2 = std::max(suz / suu, 0.0);
  double sr = 0.0, sw = 0.0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double e = zs[i] - s2 * us[i];
    sr += ws[i] * e * e;
    sw += ws[i];
  }
  BlurEstimate est;
  est.sigma_px = std::sqrt(s2);
  est.residual = std::sqrt(sr / sw);
  est.n_bins_used = us.size();
  return est;
}

}  // namespace blurfisher
