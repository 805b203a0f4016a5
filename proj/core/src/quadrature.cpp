#include "blurfisher/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "blurfisher/errors.hpp"
#include "blurfisher/units.hpp"

namespace blurfisher {
namespace {

// Kronrod 15-point abscissae (non-negative half) and weights; Gauss 7-point weights
// apply to the odd-indexed abscissae.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double s = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kronrod * half, std::fabs((kronrod - gauss) * half)};
}

}  // namespace

std::string QuadratureResult::diagnostics() const {
  std::ostringstream ss;
  ss << "value=" << value << " error_estimate=" << error_estimate << " panels=" << panels
     << " evaluations=" << evaluations << (converged ? " (converged)" : " (not converged)");
  return ss.str();
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureOptions& options, double max_panel_width) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  std::priority_queue<Panel> heap;
  std::size_t initial = 1;
  if (max_panel_width > 0.0) {
    initial = static_cast<std::size_t>(std::ceil(std::fabs(b - a) / max_panel_width));
    initial = std::max<std::size_t>(initial, 1);
  }
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i < initial; ++i) {
    const double pa = a + (b - a) * static_cast<double>(i) / static_cast<double>(initial);
    const double pb = i + 1 == initial ? b : a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(initial);
    Panel p = gauss_kronrod(f, pa, pb);
    total += p.value;
    error += p.error;
    heap.push(p);
  }
  result.evaluations = 15 * initial;
  std::size_t subdivisions = 0;
  auto tolerance = [&] { return std::max(options.abs_tol, options.rel_tol * std::fabs(total)); };
  while (error > tolerance() && subdivisions < options.max_subdivisions) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    result.evaluations += 30;
    ++subdivisions;
  }
  // Re-sum from the panels to shed accumulated rounding from the running updates.
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
  total = 0.0;
  error = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    error += p.error;
  }
  result.value = total;
  result.error_estimate = error;
  result.panels = panels.size();
  result.converged = error <= tolerance();
  return result;
}

double integrate_or_throw(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& options, double max_panel_width) {
  const QuadratureResult r = integrate_adaptive(f, a, b, options, max_panel_width);
  if (!r.converged) throw NumericError("quadrature did not converge: " + r.diagnostics());
  return r.value;
}

double integrate_periodic(const std::function<double(double)>& f, std::size_t n) {
  if (n == 0) throw DomainError("periodic rule needs at least one node");
  double sum = 0.0;
  const double h = 2.0 * kPi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) sum += f(h * static_cast<double>(i));
  return sum * h;
}

LineMinimum golden_section_minimize(const std::function<double(double)>& f, double a, double b,
                                    double x_tol, std::size_t max_iterations) {
  if (!(a < b)) throw DomainError("golden section needs a < b");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  std::size_t it = 0;
  while (b - a > x_tol && it < max_iterations) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

}  // namespace blurfisher
