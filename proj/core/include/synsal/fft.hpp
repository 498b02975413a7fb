#pragma once

#include <complex>

#include "synsal/types.hpp"

namespace synsal {

/// Forward 2D DFT, unnormalized: X(u,v) = sum x(y,x) exp(-2*pi*i*(uy/H + vx/W)).
Spectrum dft2(const GrayMap& map);

/// Inverse 2D DFT with 1/(H*W) normalization; returns the real part clamped
/// to [0,1].
GrayMap idft2(const Spectrum& spec);

/// In-place 2D transform on a row-major complex buffer. Works for arbitrary
/// dimensions (radix-2 where possible, Bluestein otherwise). The inverse
/// applies the 1/(H*W) factor.
void fft2_inplace(std::complex<double>* data, int height, int width, bool inverse);

}  // namespace synsal
