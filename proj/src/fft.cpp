#include "phi4/fft.hpp"

#include <numbers>
#include <stdexcept>
#include <utility>

namespace phi4::fft {

namespace {

void transform(cvec& a, double sign) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w{1.0, 0.0};
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = a[i + j];
        const auto v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_inplace(cvec& a) { transform(a, -1.0); }

void ifft_inplace(cvec& a) {
  transform(a, 1.0);
  const double inv = 1.0 / static_cast<double>(a.size());
  for (auto& z : a) z *= inv;
}

std::vector<double> wavenumbers(std::size_t n, double L) {
  std::vector<double> xi(n);
  const double base = 2.0 * std::numbers::pi / L;
  for (std::size_t m = 0; m < n; ++m) {
    const double mm = (m <= n / 2) ? static_cast<double>(m)
                                   : static_cast<double>(m) - static_cast<double>(n);
    xi[m] = base * mm;
  }
  return xi;
}

cvec derivative(const cvec& f, double L) {
  cvec fh = f;
  fft_inplace(fh);
  const auto xi = wavenumbers(f.size(), L);
  const std::complex<double> i1{0.0, 1.0};
  for (std::size_t m = 0; m < fh.size(); ++m) fh[m] *= i1 * xi[m];
  if (!fh.empty()) fh[fh.size() / 2] = 0.0;  // Nyquist
  transform(fh, 1.0);
  const double inv = 1.0 / static_cast<double>(fh.size());
  for (auto& z : fh) z *= inv;
  return fh;
}

}  // namespace phi4::fft
