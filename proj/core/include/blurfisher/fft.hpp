#pragma once

#include "blurfisher/grid.hpp"

namespace blurfisher::fft {

/// Unnormalized forward 2D DFT, X(f) = sum_x x(p) e^{-j 2 pi f.p}.
ComplexGrid forward(const ComplexGrid& in);
ComplexGrid forward(const RealGrid& in);

/// Inverse 2D DFT including the 1/N factor, so inverse(forward(x)) == x.
ComplexGrid inverse(const ComplexGrid& in);

/// Real part of inverse(); for spectra that are Hermitian symmetric.
RealGrid inverse_real(const ComplexGrid& in);

}  // namespace blurfisher::fft
