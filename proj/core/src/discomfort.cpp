#include "blurfisher/discomfort.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "blurfisher/blur.hpp"
#include "blurfisher/errors.hpp"
#include "blurfisher/quadrature.hpp"

namespace blurfisher {

namespace {

void require_finite_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) throw DomainError(std::string(what) + " must be finite and >= 0");
}

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(std::string(what) + " must be finite and > 0");
}

}  // namespace

void DiscomfortParams::validate() const {
  require_positive(a, "a");
  require_positive(gamma, "gamma");
  require_positive(s_G, "s_G");
}

double epsilon(double s_B, double s_G) {
  require_positive(s_G, "s_G");
  if (std::isinf(s_B) && s_B > 0.0) return 1.0;
  require_finite_nonneg(s_B, "s_B");
  const double xi = s_B / s_G;
  return 1.0 - 1.0 / std::sqrt(1.0 + xi * xi);
}

double sensitivity(double xi) {
  require_finite_nonneg(xi, "xi");
  return xi * std::pow(1.0 + xi * xi, -1.5);
}

double delta_xi(double xi, double delta_eps) {
  require_finite_nonneg(xi, "xi");
  if (xi == 0.0) throw DomainError("delta_xi diverges at xi = 0");
  require_positive(delta_eps, "delta_eps");
  return std::pow(1.0 + xi * xi, 1.5) * delta_eps / xi;
}

double dipper_minimum() {
  // log-parameterized so the bracket spans several decades symmetrically
  const LineMinimum m = golden_section_minimize(
      [](double t) { return std::log(delta_xi(std::exp(t), 1.0)); }, std::log(0.01), std::log(100.0), 1e-12);
  return std::exp(m.x);
}

double defocus_discomfort(double pupil_mm, double diopters, double s_G) {
  require_positive(s_G, "s_G");
  const double s_B = defocus_spread(DefocusParams{pupil_mm, diopters});
  return 100.0 * epsilon(s_B, s_G);
}

double sbdi(double s_B, const DiscomfortParams& params) {
  params.validate();
  if (std::isinf(s_B) && s_B > 0.0) return params.a;
  require_finite_nonneg(s_B, "s_B");
  const double xi = params.gamma * params.gamma * s_B / params.s_G;
  return params.a * (1.0 - 1.0 / std::sqrt(1.0 + xi * xi));
}

std::vector<DiopterChartRow> diopter_chart(const std::vector<double>& pupils_mm, double s_G) {
  std::vector<DiopterChartRow> rows;
  for (double p : pupils_mm) {
    for (int i = 0; i <= 200; ++i) {
      const double d = i * 0.01;
      rows.push_back({d, p, defocus_discomfort(p, d, s_G)});
    }
  }
  return rows;
}

std::vector<DipperRow> dipper_curve(double delta_eps, std::size_t points, double xi_lo, double xi_hi) {
  require_positive(delta_eps, "delta_eps");
  require_positive(xi_lo, "xi_lo");
  if (!(xi_hi > xi_lo) || !std::isfinite(xi_hi)) throw DomainError("xi range must be increasing");
  if (points < 2) throw DomainError("dipper curve needs at least 2 points");
  std::vector<DipperRow> rows;
  rows.reserve(points);
  const double l0 = std::log(xi_lo);
  const double step = (std::log(xi_hi) - l0) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double xi = std::exp(l0 + step * static_cast<double>(i));
    rows.push_back({xi, delta_xi(xi, delta_eps)});
  }
  return rows;
}

void write_diopter_chart_csv(const std::filesystem::path& path, const std::vector<DiopterChartRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "D,pupil_mm,discomfort_centesimal\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.2f,%.6g,%.9g\n", r.diopters, r.pupil_mm, r.discomfort_centesimal);
    out << buf;
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_dipper_csv(const std::filesystem::path& path, const std::vector<DipperRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "xi,delta_xi\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", r.xi, r.delta_xi);
    out << buf;
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace blurfisher
