#include "rvo/faddeeva.hpp"
#include "rvo/constants.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rvo {

namespace {

// Weideman's rational approximation (SIAM Rev. 36, 1994). The expansion
// coefficients are obtained once from a discrete Fourier transform of the
// mapped Gaussian; N = 64 keeps the error near machine precision on the
// whole closed upper half plane.
struct WeidemanTable {
  static constexpr int N = 64;
  double length = 0.0;
  std::array<double, N> coeff{}; // descending powers for Horner

  WeidemanTable() {
    const int m = 2 * N;
    const int m2 = 4 * N;
    length = std::sqrt(N / std::sqrt(2.0));

    // Samples of exp(-t^2)(L^2+t^2) on the mapped grid, with the raw
    // vector laid out as [0, f(k=-m+1), ..., f(k=m-1)].
    std::vector<double> raw(static_cast<size_t>(m2), 0.0);
    for (int i = 1; i < m2; ++i) {
      const int k = i - m;
      const double theta = k * kPi / m;
      const double t = length * std::tan(0.5 * theta);
      raw[static_cast<size_t>(i)] = std::exp(-t * t) * (length * length + t * t);
    }

    // fftshift followed by the real part of the DFT.
    std::vector<double> shifted(static_cast<size_t>(m2));
    for (int i = 0; i < m2; ++i)
      shifted[static_cast<size_t>(i)] = raw[static_cast<size_t>((i + m) % m2)];

    std::array<double, N + 1> a{};
    for (int mode = 0; mode <= N; ++mode) {
      double acc = 0.0;
      for (int j = 0; j < m2; ++j)
        acc += shifted[static_cast<size_t>(j)] * std::cos(kTwoPi * j * mode / m2);
      a[static_cast<size_t>(mode)] = acc / m2;
    }
    for (int i = 0; i < N; ++i)
      coeff[static_cast<size_t>(i)] = a[static_cast<size_t>(N - i)];
  }
};

const WeidemanTable& table() {
  static const WeidemanTable t;
  return t;
}

} // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (z.imag() < 0.0)
    throw std::domain_error("faddeeva_w: Im(z) must be >= 0");

  const WeidemanTable& t = table();
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> denom = t.length - iz;
  const std::complex<double> big_z = (t.length + iz) / denom;

  std::complex<double> p(0.0, 0.0);
  for (int i = 0; i < WeidemanTable::N; ++i)
    p = p * big_z + t.coeff[static_cast<size_t>(i)];

  const double inv_sqrt_pi = 0.5641895835477562869480794515607726;
  return 2.0 * p / (denom * denom) + inv_sqrt_pi / denom;
}

} // namespace rvo
