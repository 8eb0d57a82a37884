#include "rvo/atomic_medium.hpp"

#include "rvo/constants.hpp"
#include "rvo/faddeeva.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rvo {

namespace {

// Steck data sheet values.
constexpr double kMass85 = 84.911789738 * kAtomicMassUnit;
constexpr double kMass87 = 86.909180527 * kAtomicMassUnit;
constexpr double kAbundance85 = 0.7217;
constexpr double kAbundance87 = 0.2783;
constexpr double kSplitting85Hz = 3.0357324390e9;
constexpr double kSplitting87Hz = 6.8346826109e9;
// 85Rb D2 centroid sits 78.095 MHz below the 87Rb centroid.
constexpr double kIsotopeShift85Hz = -78.095e6;

} // namespace

IsotopeSpec isotope_spec(Isotope which) {
  if (which == Isotope::Rb85)
    return {Isotope::Rb85, kAbundance85, kMass85, kTwoPi * kSplitting85Hz,
            kTwoPi * kIsotopeShift85Hz};
  return {Isotope::Rb87, kAbundance87, kMass87, kTwoPi * kSplitting87Hz, 0.0};
}

std::vector<IsotopeSpec> natural_mixture() {
  return {isotope_spec(Isotope::Rb85), isotope_spec(Isotope::Rb87)};
}

Isotope parse_isotope(const std::string& tag) {
  if (tag == "85" || tag == "rb85" || tag == "Rb85" || tag == "RB85")
    return Isotope::Rb85;
  if (tag == "87" || tag == "rb87" || tag == "Rb87" || tag == "RB87")
    return Isotope::Rb87;
  throw std::invalid_argument("unknown isotope tag: " + tag);
}

std::string isotope_name(Isotope which) {
  return which == Isotope::Rb85 ? "rb85" : "rb87";
}

void VaporCell::validate() const {
  if (!(temperature > 250.0) || !(temperature < 500.0))
    throw std::invalid_argument(
        "cell.temperature_k must be in (250, 500), the validity window of the "
        "vapor-pressure correlation");
  if (!(length > 0.0))
    throw std::invalid_argument("cell.length_m must be > 0");
  if (!(density_scale > 0.0))
    throw std::invalid_argument("cell.density_scale must be > 0");
  if (!(chi_prefactor > 0.0))
    throw std::invalid_argument("cell.chi_prefactor must be > 0");
  if (isotopes.empty())
    throw std::invalid_argument("cell.isotopes must be nonempty");
  double total = 0.0;
  for (const auto& iso : isotopes) {
    if (!(iso.mass > 0.0) || !(iso.ground_splitting > 0.0))
      throw std::invalid_argument("cell.isotopes entry is invalid");
    total += iso.abundance;
  }
  // A single-isotope cell is allowed in tests; abundances there are the
  // natural fractions and need not sum to 1.
  if (isotopes.size() >= 2 && std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("cell.isotopes abundances must sum to 1");
}

std::vector<AtomicLine> line_table(const std::vector<IsotopeSpec>& isotopes,
                                   double natural_width) {
  if (isotopes.empty())
    throw std::invalid_argument("line_table: isotope list is empty");
  if (!(natural_width > 0.0))
    throw std::invalid_argument("line_table: natural width must be > 0");

  std::vector<AtomicLine> lines;
  for (const auto& iso : isotopes) {
    // Transition frequency offset from the isotope centroid equals minus
    // the ground-state hyperfine shift; shifts are degeneracy weighted so
    // that the two lines of one isotope are split by exactly omega_12.
    if (iso.name == Isotope::Rb87) {
      const double w12 = iso.ground_splitting;
      lines.push_back({Isotope::Rb87, 1, iso.d2_center_offset + (5.0 / 8.0) * w12,
                       3.0 / 8.0, natural_width});
      lines.push_back({Isotope::Rb87, 2, iso.d2_center_offset - (3.0 / 8.0) * w12,
                       5.0 / 8.0, natural_width});
    } else {
      const double w12 = iso.ground_splitting;
      lines.push_back({Isotope::Rb85, 2, iso.d2_center_offset + (7.0 / 12.0) * w12,
                       5.0 / 12.0, natural_width});
      lines.push_back({Isotope::Rb85, 3, iso.d2_center_offset - (5.0 / 12.0) * w12,
                       7.0 / 12.0, natural_width});
    }
  }
  std::sort(lines.begin(), lines.end(),
            [](const AtomicLine& a, const AtomicLine& b) {
              return a.center_detuning < b.center_detuning;
            });
  return lines;
}

double number_density(double temperature) {
  if (!(temperature > 250.0) || !(temperature < 500.0))
    throw std::invalid_argument(
        "number_density: temperature outside the 250-500 K validity window");
  const double p_torr = std::pow(10.0, 7.193 - 4040.0 / temperature);
  const double p_pa = 133.322 * p_torr;
  return p_pa / (kBoltzmann * temperature);
}

std::complex<double> susceptibility(double detuning, const VaporCell& cell,
                                    const std::vector<AtomicLine>& lines) {
  const double n_total = cell.density_scale * number_density(cell.temperature);
  const double sqrt_pi = 1.7724538509055160273;

  std::complex<double> chi(0.0, 0.0);
  for (const auto& line : lines) {
    const IsotopeSpec iso = isotope_spec(line.isotope);
    double abundance = iso.abundance;
    for (const auto& s : cell.isotopes)
      if (s.name == line.isotope) abundance = s.abundance;
    const double u = std::sqrt(2.0 * kBoltzmann * cell.temperature / iso.mass);
    const double doppler = kReferenceWavenumber * u; // rad/s
    const std::complex<double> zeta(
        (detuning - line.center_detuning) / doppler,
        0.5 * line.natural_width / doppler);
    const std::complex<double> i(0.0, 1.0);
    chi += i * (cell.chi_prefactor * n_total / u) * abundance *
           line.relative_strength * sqrt_pi * faddeeva_w(zeta);
  }
  return chi;
}

std::complex<double> susceptibility(double detuning, const VaporCell& cell) {
  const double gamma =
      cell.natural_width > 0.0 ? cell.natural_width : kDefaultNaturalWidth;
  return susceptibility(detuning, cell, line_table(cell.isotopes, gamma));
}

double absorption_coefficient(double detuning, const VaporCell& cell) {
  const double omega = kReferenceOmega + detuning;
  return (omega / kSpeedOfLight) * susceptibility(detuning, cell).imag();
}

double refractive_index(double detuning, const VaporCell& cell) {
  return 1.0 + 0.5 * susceptibility(detuning, cell).real();
}

VaporCell default_cell() {
  VaporCell cell;
  cell.isotopes = natural_mixture();
  return cell;
}

} // namespace rvo
