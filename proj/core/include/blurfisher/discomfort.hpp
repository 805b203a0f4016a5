#pragma once

#include <filesystem>
#include <vector>

#include "blurfisher/config.hpp"

namespace blurfisher {

struct DiscomfortParams {
  double a = 100.0;
  double gamma = 1.0;
  double s_G = kDefaultNeuralSpread;
  void validate() const;
};

/// 1 - 1/sqrt(1 + (s_B/s_G)^2), in [0, 1).
double epsilon(double s_B, double s_G);
/// d epsilon / d xi.
double sensitivity(double xi);
/// Normalized blur increment producing a discomfort increment delta_eps at xi.
double delta_xi(double xi, double delta_eps);
/// Minimizer of delta_xi over xi > 0, found numerically.
double dipper_minimum();
/// Discomfort of a defocused eye in centesimal units.
double defocus_discomfort(double pupil_mm, double diopters, double s_G);
double sbdi(double s_B, const DiscomfortParams& params);

struct DiopterChartRow {
  double diopters;
  double pupil_mm;
  double discomfort_centesimal;
};
/// D in [0, 2] with step 0.01 for each pupil diameter.
std::vector<DiopterChartRow> diopter_chart(const std::vector<double>& pupils_mm, double s_G);

struct DipperRow {
  double xi;
  double delta_xi;
};
/// xi logarithmically spaced over [0.05, 10], 400 points.
std::vector<DipperRow> dipper_curve(double delta_eps, std::size_t points = 400, double xi_lo = 0.05,
                                    double xi_hi = 10.0);

void write_diopter_chart_csv(const std::filesystem::path& path, const std::vector<DiopterChartRow>& rows);
void write_dipper_csv(const std::filesystem::path& path, const std::vector<DipperRow>& rows);

}  // namespace blurfisher
