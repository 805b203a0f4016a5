#include "blurfisher/bessel.hpp"

#include <cmath>

#include "blurfisher/units.hpp"

namespace blurfisher {
namespace {

constexpr double kSplit = 12.0;

double j1_series(double x) {
  // J1(x) = sum_k (-1)^k (x/2)^{2k+1} / (k! (k+1)!)
  const long double h = 0.5L * x;
  const long double h2 = h * h;
  long double term = h;
  long double sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= -h2 / (static_cast<long double>(k) * static_cast<long double>(k + 1));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
  }
  return static_cast<double>(sum);
}

double j1_asymptotic(double x) {
  // Hankel expansion with mu = 4 nu^2 = 4; terms a_k = prod_{i<=k} (mu - (2i-1)^2) / (k! 8^k x^k).
  const double mu = 4.0;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::fabs(term);
    if (mag > last) break;  // asymptotic series started to diverge
    last = mag;
    // k odd contributes to Q with sign (-1)^{(k-1)/2}; k even to P with sign (-1)^{k/2}
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    if (mag < 1e-18) break;
  }
  const double chi = x - 0.75 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j1(double x) {
  const double ax = std::fabs(x);
  const double v = ax < kSplit ? j1_series(ax) : j1_asymptotic(ax);
  return x < 0.0 ? -v : v;
}

double jinc(double x) {
  if (std::fabs(x) < 1e-8) return 1.0 - x * x / 8.0;
  return 2.0 * bessel_j1(x) / x;
}

}  // namespace blurfisher
