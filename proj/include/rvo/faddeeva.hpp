// faddeeva.hpp - scaled complex complementary error function w(z)
#pragma once

#include <complex>

namespace rvo {

// w(z) = exp(-z^2) * erfc(-i z) for Im(z) >= 0.
// Relative error below 1e-10 over the upper half plane including the
// real axis out to |z| ~ 1e4. Throws std::domain_error for Im(z) < 0.
std::complex<double> faddeeva_w(std::complex<double> z);

} // namespace rvo
