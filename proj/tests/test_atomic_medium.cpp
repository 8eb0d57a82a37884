#include "rvo/atomic_medium.hpp"
#include "rvo/constants.hpp"

#include <cmath>
#include <complex>

#include <doctest.h>

using namespace rvo;

namespace {

VaporCell single_isotope_cell(Isotope which) {
  VaporCell cell = default_cell();
  IsotopeSpec spec = isotope_spec(which);
  spec.abundance = 1.0;
  cell.isotopes = {spec};
  return cell;
}

} // namespace

TEST_CASE("line table: four bands in ascending order") {
  const auto lines = line_table(natural_mixture());
  REQUIRE(lines.size() == 4);

  CHECK(lines[0].isotope == Isotope::Rb87);
  CHECK(lines[0].lower_f == 2);
  CHECK(lines[1].isotope == Isotope::Rb85);
  CHECK(lines[1].lower_f == 3);
  CHECK(lines[2].isotope == Isotope::Rb85);
  CHECK(lines[2].lower_f == 2);
  CHECK(lines[3].isotope == Isotope::Rb87);
  CHECK(lines[3].lower_f == 1);

  // Band centers in GHz relative to the reference.
  CHECK(lines[0].center_detuning / kTwoPi == doctest::Approx(-2.563e9).epsilon(1e-3));
  CHECK(lines[1].center_detuning / kTwoPi == doctest::Approx(-1.343e9).epsilon(1e-3));
  CHECK(lines[2].center_detuning / kTwoPi == doctest::Approx(1.6927e9).epsilon(1e-3));
  CHECK(lines[3].center_detuning / kTwoPi == doctest::Approx(4.2717e9).epsilon(1e-3));
}

TEST_CASE("line table: splittings and strengths") {
  const auto lines = line_table(natural_mixture());
  // Ground hyperfine splittings between same-isotope bands.
  CHECK((lines[3].center_detuning - lines[0].center_detuning) / kTwoPi ==
        doctest::Approx(6.8346826109e9).epsilon(1e-12));
  CHECK((lines[2].center_detuning - lines[1].center_detuning) / kTwoPi ==
        doctest::Approx(3.0357324390e9).epsilon(1e-12));
  // Degeneracy weights sum to 1 within each isotope.
  CHECK(lines[0].relative_strength + lines[3].relative_strength ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lines[1].relative_strength + lines[2].relative_strength ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lines[0].relative_strength == doctest::Approx(5.0 / 8.0));
  CHECK(lines[3].relative_strength == doctest::Approx(3.0 / 8.0));
  CHECK(lines[1].relative_strength == doctest::Approx(7.0 / 12.0));
  CHECK(lines[2].relative_strength == doctest::Approx(5.0 / 12.0));
}

TEST_CASE("number density oracle") {
  // Frozen from log10 P[torr] = 7.193 - 4040/T evaluated in extended
  // precision, P in Pa via 133.322 Pa/torr, n = P/(kB T).
  CHECK(number_density(378.15) == doctest::Approx(8.2520768737741496e18).epsilon(1e-12));
  CHECK(number_density(293.15) == doctest::Approx(8.4993952961943241e15).epsilon(1e-12));
}

TEST_CASE("number density: monotone and windowed") {
  double prev = number_density(260.0);
  for (double t = 270.0; t <= 490.0; t += 10.0) {
    const double n = number_density(t);
    CHECK(n > prev);
    prev = n;
  }
  CHECK_THROWS_AS(number_density(249.0), std::invalid_argument);
  CHECK_THROWS_AS(number_density(501.0), std::invalid_argument);
}

TEST_CASE("single line: Voigt symmetry about the center") {
  VaporCell cell = single_isotope_cell(Isotope::Rb87);
  const std::vector<AtomicLine> one = {
      {Isotope::Rb87, 2, 0.0, 1.0, kDefaultNaturalWidth}};
  for (double d = 1e8; d < 2e10; d *= 3.0) {
    const auto plus = susceptibility(d, cell, one);
    const auto minus = susceptibility(-d, cell, one);
    CHECK(plus.imag() == doctest::Approx(minus.imag()).epsilon(1e-12));
    CHECK(plus.real() == doctest::Approx(-minus.real()).epsilon(1e-12));
  }
}

TEST_CASE("single line: Doppler-dominated width") {
  VaporCell cell = single_isotope_cell(Isotope::Rb87);
  const std::vector<AtomicLine> one = {
      {Isotope::Rb87, 2, 0.0, 1.0, kDefaultNaturalWidth}};
  const double peak = susceptibility(0.0, cell, one).imag();
  // Bisect for the half-maximum point on the positive side.
  double lo = 0.0, hi = kTwoPi * 2e9;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (susceptibility(mid, cell, one).imag() > 0.5 * peak ? lo : hi) = mid;
  }
  const double fwhm_hz = 2.0 * lo / kTwoPi;
  // Gaussian FWHM 2 sqrt(ln 2) k u = 574.04 MHz at 378.15 K; the Voigt
  // profile is a few MHz wider.
  CHECK(fwhm_hz == doctest::Approx(574.04e6).epsilon(0.05));
  CHECK(fwhm_hz > 574.0e6);
}

TEST_CASE("opaque at every band center") {
  const VaporCell cell = default_cell();
  for (const auto& line : line_table(natural_mixture())) {
    const double alpha = absorption_coefficient(line.center_detuning, cell);
    CAPTURE(line.center_detuning / kTwoPi);
    CHECK(std::exp(-alpha * cell.length) < 1e-3);
  }
}

TEST_CASE("absorption is nonnegative everywhere") {
  const VaporCell cell = default_cell();
  for (int i = 0; i <= 400; ++i) {
    const double d = kTwoPi * (-20e9 + 0.1e9 * i);
    CHECK(absorption_coefficient(d, cell) >= 0.0);
  }
}

TEST_CASE("susceptibility is linear in density_scale") {
  VaporCell cell = default_cell();
  const double d = kTwoPi * 0.3e9;
  const auto base = susceptibility(d, cell);
  cell.density_scale = 2.5;
  const auto scaled = susceptibility(d, cell);
  CHECK(scaled.real() == doctest::Approx(2.5 * base.real()).epsilon(1e-12));
  CHECK(scaled.imag() == doctest::Approx(2.5 * base.imag()).epsilon(1e-12));
}

TEST_CASE("far wings: absorption dies off, dispersion persists") {
  const VaporCell cell = default_cell();
  const auto chi = susceptibility(kTwoPi * 500e9, cell);
  // The Gaussian core is utterly gone; only the 1/x dispersive tail and
  // the Lorentzian absorption floor remain.
  CHECK(std::abs(chi.imag()) < 1e-9);
  CHECK(std::abs(chi) < 1e-6);
  CHECK(chi.real() < 0.0);  // above every band: n < 1
}

TEST_CASE("refractive index straddles 1 across a band") {
  const VaporCell cell = default_cell();
  const double center = kTwoPi * -2.563e9;
  // Dispersion: n > 1 below the band, n < 1 above it.
  CHECK(refractive_index(center - kTwoPi * 3e9, cell) > 1.0);
  CHECK(refractive_index(center + kTwoPi * 20e9, cell) < 1.0);
}

TEST_CASE("cell validation") {
  VaporCell cell = default_cell();
  cell.length = -1.0;
  CHECK_THROWS_AS(cell.validate(), std::invalid_argument);
  cell = default_cell();
  cell.temperature = 100.0;
  CHECK_THROWS_AS(cell.validate(), std::invalid_argument);
}

TEST_CASE("isotope parsing round-trips") {
  CHECK(parse_isotope("85") == Isotope::Rb85);
  CHECK(parse_isotope("rb87") == Isotope::Rb87);
  CHECK(parse_isotope(isotope_name(Isotope::Rb85)) == Isotope::Rb85);
  CHECK_THROWS_AS(parse_isotope("rb86"), std::invalid_argument);
}
