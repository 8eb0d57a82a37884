// cavity.hpp - round-trip optics of the standing-wave cavity with the
// vapor cell inside: phase, amplitude survival, Airy transmission and
// dispersion-pulled resonance positions.
#pragma once

#include "rvo/atomic_medium.hpp"
#include "rvo/trace.hpp"

#include <optional>
#include <vector>

namespace rvo {

struct CavityGeometry {
  double total_length = 0.177;   // m
  double cell_length = 0.075;    // m
  double r1 = 0.90;              // input coupler intensity reflectivity
  double r2 = 0.995;
  double excess_survival = 1.0;  // a_x, per round trip (amplitude)
  double pzt_offset = 0.0;       // m, added to the cavity length

  void validate() const;
  double t1() const { return 1.0 - r1; }
  double t2() const { return 1.0 - r2; }
  // sqrt(R1 R2) * a_x, the vacuum round-trip amplitude survival
  double vacuum_survival() const;
};

struct RoundTrip {
  double phase;     // rad, reduced relative to the reference frequency
  double survival;  // amplitude per round trip, in [0, 1]
};

struct CavityMode {
  double detuning;   // rad/s from the global reference
  double linewidth;  // FWHM, rad/s
  double survival;   // round-trip amplitude survival at the mode
};

using ModeList = std::vector<CavityMode>;

// c / (2L), Hz.
double empty_fsr(const CavityGeometry& geometry);

// a_x such that the finesse pi*sqrt(rho)/(1-rho) with rho = sqrt(R1 R2)*a_x
// hits the target. Throws if the target is not attainable.
double calibrate_excess_loss(double r1, double r2, double target_finesse);

// Round-trip phase (reduced: the huge constant 2*omega_ref*L/c is wrapped
// into [-pi, pi) once, so the result is well conditioned) and amplitude
// survival at reference detuning `detuning`.
RoundTrip round_trip(double detuning, const CavityGeometry& geometry,
                     const VaporCell& cell);
RoundTrip round_trip(double detuning, const CavityGeometry& geometry,
                     const VaporCell& cell, const std::vector<AtomicLine>& lines);
RoundTrip round_trip_vacuum(double detuning, const CavityGeometry& geometry);

// Airy transmission T = T1*T2*a_x*exp(-alpha*Lc) / ((1-rho)^2 + 4 rho sin^2(phi/2)).
double transmission(double detuning, const CavityGeometry& geometry,
                    const VaporCell& cell, const std::vector<AtomicLine>& lines);

// Uniform grid of detunings (rad/s). `with_atoms = false` evaluates the
// empty cavity. Values are intensity transmissions in [0, 1].
SpectrumTrace transmission_spectrum(double start, double stop, int points,
                                    const CavityGeometry& geometry,
                                    const VaporCell& cell,
                                    bool with_atoms = true, int threads = 1);

// All resonances in [start, stop] (detunings, rad/s): solutions of
// phi = 0 (mod 2pi) with positive phase slope, found by bracketing the
// unwrapped phase and bisecting to |phi mod 2pi| < 1e-9 rad.
ModeList find_resonances(double start, double stop,
                         const CavityGeometry& geometry, const VaporCell& cell,
                         bool with_atoms = true);

// Nearest resonance to `detuning`, searched within +-1.5 empty FSR.
std::optional<CavityMode> nearest_resonance(double detuning,
                                            const CavityGeometry& geometry,
                                            const VaporCell& cell,
                                            bool with_atoms = true);

// T1 / (1 - rho^2): fraction of generated intracavity photons that leave
// through the input coupler.
double escape_efficiency(const CavityGeometry& geometry);

// pzt_offset such that the cavity is resonant at `detuning` (smallest
// magnitude adjustment).
double solve_pzt_for_resonance(double detuning, const CavityGeometry& geometry,
                               const VaporCell& cell);

} // namespace rvo
