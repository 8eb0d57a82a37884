// atomic_medium.hpp - Rb D2 spectroscopic data and the Doppler-broadened
// complex susceptibility of the mixed-isotope vapor.
//
// Band offsets, splittings and relative strengths are taken from the Steck
// alkali data sheets ("Rubidium 85 D Line Data" / "Rubidium 87 D Line
// Data"); excited-state hyperfine structure is collapsed into one effective
// line per ground hyperfine state.
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace rvo {

enum class Isotope { Rb85, Rb87 };

struct IsotopeSpec {
  Isotope name;
  double abundance;          // fraction of total number density
  double mass;               // kg
  double ground_splitting;   // omega_12, rad/s
  double d2_center_offset;   // rad/s relative to the global reference
};

struct AtomicLine {
  Isotope isotope;
  int lower_f;               // ground-state F quantum number
  double center_detuning;    // rad/s from the global reference
  double relative_strength;  // sums to 1 within one isotope
  double natural_width;      // Gamma, rad/s
};

struct VaporCell {
  double temperature = 378.15;           // K (105 C)
  double length = 0.075;                 // m
  std::vector<IsotopeSpec> isotopes;     // natural mix by default
  double density_scale = 1.0;            // calibration slack on n
  double natural_width = 0.0;            // rad/s; 0 -> default Gamma
  double chi_prefactor = 2.5e-21;        // C_chi, see default config

  void validate() const;                 // throws std::invalid_argument
};

IsotopeSpec isotope_spec(Isotope which);
std::vector<IsotopeSpec> natural_mixture();
Isotope parse_isotope(const std::string& tag);   // "85"/"87"/"rb85"/...
std::string isotope_name(Isotope which);

// Default D2 natural width, rad/s (Gamma/2pi = 6.0666 MHz).
inline constexpr double kDefaultNaturalWidth = 2.0 * 3.141592653589793 * 6.0666e6;

// One effective line per ground hyperfine state, ordered by center detuning.
std::vector<AtomicLine> line_table(const std::vector<IsotopeSpec>& isotopes,
                                   double natural_width = kDefaultNaturalWidth);

// Vapor number density from the liquid-phase pressure correlation
// log10 P[torr] = 7.193 - 4040/T. Valid for 250 K < T < 500 K.
double number_density(double temperature);

// chi(detuning) for an explicit line list; `cell` supplies T, density and
// the calibrated prefactor.
std::complex<double> susceptibility(double detuning, const VaporCell& cell,
                                    const std::vector<AtomicLine>& lines);
std::complex<double> susceptibility(double detuning, const VaporCell& cell);

double absorption_coefficient(double detuning, const VaporCell& cell); // 1/m
double refractive_index(double detuning, const VaporCell& cell);

VaporCell default_cell();

} // namespace rvo
