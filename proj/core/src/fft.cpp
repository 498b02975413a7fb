#include "synsal/fft.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace synsal {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 Cooley-Tukey; length must be a power of two.
// sign = -1 forward, +1 inverse (no normalization here).
void fft_pow2(std::complex<double>* a, int n, int sign) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (int len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / len;
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Bluestein chirp-z transform for arbitrary lengths; sign as above.
void fft_bluestein(std::complex<double>* a, int n, int sign) {
  const int m = next_pow2(2 * n - 1);
  std::vector<std::complex<double>> chirp(std::size_t(n));
  for (int k = 0; k < n; ++k) {
    // exp(sign * i * pi * k^2 / n); square via int64 to avoid overflow
    const double ang = sign * (kTwoPi / 2.0) * double((std::int64_t(k) * k) % (2 * std::int64_t(n))) / double(n);
    chirp[std::size_t(k)] = {std::cos(ang), std::sin(ang)};
  }
  std::vector<std::complex<double>> fa(std::size_t(m)), fb(std::size_t(m));
  for (int k = 0; k < n; ++k) fa[std::size_t(k)] = a[k] * chirp[std::size_t(k)];
  fb[0] = std::conj(chirp[0]);
  for (int k = 1; k < n; ++k) {
    fb[std::size_t(k)] = fb[std::size_t(m - k)] = std::conj(chirp[std::size_t(k)]);
  }
  fft_pow2(fa.data(), m, -1);
  fft_pow2(fb.data(), m, -1);
  for (int k = 0; k < m; ++k) fa[std::size_t(k)] *= fb[std::size_t(k)];
  fft_pow2(fa.data(), m, +1);
  const double inv_m = 1.0 / double(m);
  for (int k = 0; k < n; ++k) a[k] = fa[std::size_t(k)] * inv_m * chirp[std::size_t(k)];
}

void fft_1d(std::complex<double>* a, int n, int sign) {
  if (n == 1) return;
  if (is_pow2(n)) {
    fft_pow2(a, n, sign);
  } else {
    fft_bluestein(a, n, sign);
  }
}

}  // namespace

void fft2_inplace(std::complex<double>* data, int height, int width, bool inverse) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("fft2_inplace: dimensions must be >= 1");
  }
  const int sign = inverse ? +1 : -1;
  for (int y = 0; y < height; ++y) fft_1d(data + std::size_t(y) * width, width, sign);
  std::vector<std::complex<double>> col(std::size_t(height));
  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < height; ++y) col[std::size_t(y)] = data[std::size_t(y) * width + x];
    fft_1d(col.data(), height, sign);
    for (int y = 0; y < height; ++y) data[std::size_t(y) * width + x] = col[std::size_t(y)];
  }
  if (inverse) {
    const double norm = 1.0 / (double(height) * double(width));
    const std::size_t total = std::size_t(height) * width;
    for (std::size_t i = 0; i < total; ++i) data[i] *= norm;
  }
}

Spectrum dft2(const GrayMap& map) {
  if (map.height < 1 || map.width < 1) {
    throw std::invalid_argument("dft2: dimensions must be >= 1");
  }
  Spectrum spec(map.height, map.width);
  for (std::size_t i = 0; i < map.values.size(); ++i) spec.coeffs[i] = {map.values[i], 0.0};
  fft2_inplace(spec.coeffs.data(), spec.height, spec.width, /*inverse=*/false);
  return spec;
}

GrayMap idft2(const Spectrum& spec) {
  if (spec.height < 1 || spec.width < 1) {
    throw std::invalid_argument("idft2: dimensions must be >= 1");
  }
  std::vector<std::complex<double>> buf = spec.coeffs;
  fft2_inplace(buf.data(), spec.height, spec.width, /*inverse=*/true);
  GrayMap out(spec.height, spec.width);
  for (std::size_t i = 0; i < buf.size(); ++i) {
    out.values[i] = std::clamp(buf[i].real(), 0.0, 1.0);
  }
  return out;
}

}  // namespace synsal
