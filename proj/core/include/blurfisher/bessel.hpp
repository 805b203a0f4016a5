#pragma once

namespace blurfisher {

/// Bessel function of the first kind, order one. Power series below |x| = 12
/// (summed in extended precision), Hankel asymptotic expansion above.
double bessel_j1(double x);

/// 2 J1(x) / x with its limit 1 at x = 0.
double jinc(double x);

}  // namespace blurfisher
