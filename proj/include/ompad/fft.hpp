#pragma once

#include <complex>
#include <vector>

namespace ompad::fft {

using Complex = std::complex<double>;

// Forward DFT, X_k = sum_n x_n e^{-2*pi*i*n*k/N}, any length N >= 1.
// Power-of-two sizes run the radix-2 path directly; everything else goes
// through the Bluestein chirp construction on top of it. No zero padding of
// the signal itself, so saliency positions stay aligned with the input.
std::vector<Complex> forward(std::vector<Complex> x);

// Inverse DFT with the 1/N factor, so inverse(forward(x)) == x.
std::vector<Complex> inverse(std::vector<Complex> x);

}  // namespace ompad::fft
