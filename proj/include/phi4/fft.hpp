#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace phi4::fft {

using cvec = std::vector<std::complex<double>>;

bool is_pow2(std::size_t n);

// Forward transform, X_m = sum_j x_j exp(-2*pi*i*m*j/N).  In place, N a power of two.
void fft_inplace(cvec& a);
// Inverse with the 1/N factor.
void ifft_inplace(cvec& a);

// Signed mode wavenumbers xi_m = (2*pi/L) * m~ with m~ = m for m <= N/2, m - N above.
// The Nyquist entry (m = N/2) carries the positive sign.
std::vector<double> wavenumbers(std::size_t n, double L);

// Spectral d/dx on a periodic grid of length L; the Nyquist mode is zeroed.
cvec derivative(const cvec& f, double L);

}  // namespace phi4::fft
