#pragma once

#include <complex>
#include <span>

namespace dwell::fft {

// In-place complex DFT, unnormalized (plain FFTW convention):
//   forward:  X_k = sum_j x_j exp(-2 pi i j k / n)
//   backward: x_j = sum_k X_k exp(+2 pi i j k / n)
// Callers apply whatever normalization they need.
void transform(std::span<std::complex<double>> data, bool inverse);

}  // namespace dwell::fft
