#include "ompad/fft.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace ompad::fft {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 Cooley-Tukey, in place. sign = -1 forward, +1 inverse
// (inverse here is unscaled; callers divide by N).
void fft_pow2(std::vector<Complex>& a, int sign) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    const Complex wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

// Chirp factor e^{sign*i*pi*k^2/N}. The exponent is periodic in k^2 with
// period 2N, so reduce in integers first; this keeps the angle small and the
// trig call accurate even for large k.
Complex chirp(std::uint64_t k, std::uint64_t n, int sign) {
  const std::uint64_t r = (k * k) % (2 * n);
  const double ang = sign * kPi * static_cast<double>(r) / static_cast<double>(n);
  return Complex(std::cos(ang), std::sin(ang));
}

// Arbitrary-length forward DFT via Bluestein: rewrite nk as
// (n^2 + k^2 - (k-n)^2)/2 and evaluate the resulting correlation with a
// power-of-two transform of length >= 2N-1.
std::vector<Complex> bluestein_forward(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  const std::size_t m = next_pow2(2 * n - 1);
  std::vector<Complex> a(m, Complex(0.0, 0.0));
  std::vector<Complex> b(m, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) a[i] = x[i] * chirp(i, n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex c = chirp(i, n, +1);
    b[i] = c;
    if (i != 0) b[m - i] = c;
  }
  fft_pow2(a, -1);
  fft_pow2(b, -1);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, +1);
  const double inv_m = 1.0 / static_cast<double>(m);
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * inv_m * chirp(k, n, -1);
  return out;
}

}  // namespace

std::vector<Complex> forward(std::vector<Complex> x) {
  if (x.empty()) throw std::invalid_argument("empty transform input");
  if (is_pow2(x.size())) {
    fft_pow2(x, -1);
    return x;
  }
  return bluestein_forward(x);
}

std::vector<Complex> inverse(std::vector<Complex> x) {
  if (x.empty()) throw std::invalid_argument("empty transform input");
  const std::size_t n = x.size();
  for (auto& v : x) v = std::conj(v);
  x = forward(std::move(x));
  const double inv_n = 1.0 / static_cast<double>(n);
  for (auto& v : x) v = std::conj(v) * inv_n;
  return x;
}

}  // namespace ompad::fft
