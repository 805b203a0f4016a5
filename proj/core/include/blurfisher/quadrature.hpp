#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace blurfisher {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  bool converged = false;

  std::string diagnostics() const;
};

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. The interval is first cut
/// into panels no wider than `max_panel_width` (when > 0); the panel with the
/// largest error estimate is bisected until the summed estimate meets the
/// tolerance or the subdivision budget runs out.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options = {},
                                    double max_panel_width = 0.0);

/// Same, but throws NumericError with diagnostics when not converged.
double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options = {}, double max_panel_width = 0.0);

/// Fixed periodic trapezoid rule on [0, 2 pi) with n nodes; spectrally accurate
/// for smooth periodic integrands.
double integrate_periodic(const std::function<double(double)>& f, std::size_t n);

/// Golden-section minimization of a unimodal function on [a, b].
struct LineMinimum {
  double x = 0.0;
  double value = 0.0;
  std::size_t iterations = 0;
};
LineMinimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                    double x_tol = 1e-10, std::size_t max_iterations = 500);

}  // namespace blurfisher
