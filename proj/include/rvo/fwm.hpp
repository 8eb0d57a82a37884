// fwm.hpp - double-lambda four-wave-mixing gain, the Stokes/anti-Stokes
// coupled round-trip map, oscillation threshold and steady state.
#pragma once

#include "rvo/atomic_medium.hpp"
#include "rvo/cavity.hpp"
#include "rvo/constants.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace rvo {

struct PumpConfig {
  double detuning = kTwoPi * -3.6e9;  // rad/s from the global reference
  double power = 0.1;                 // W
  Isotope isotope = Isotope::Rb87;
};

struct FwmDetunings {
  double delta_b;   // pump minus omega_01 (|1> is the lower ground state)
  double delta_a;   // pump minus omega_02; delta_a - delta_b == omega_12
  double omega_12;  // rad/s
};

// Phenomenological gain constants; the defaults are calibrated so the
// model oscillates below 100 mW pump with >= 1 mW total output at 100 mW,
// and live in the run config, not in the physics.
struct GainConfig {
  double coupling = 6.5e-16;             // C_g, W^-1 m^2
  double one_photon_scale = kTwoPi * 1e9;   // Delta_s, rad/s
  double two_photon_width = kTwoPi * 1e6;   // gamma_12, rad/s
  double saturation_power = 3.0e-3;      // P_sat, W (total sideband output)
  double pump_depletion_power = 0.1;     // W, pump survival roll-off
  double power_cap = 1.0;                // W, threshold search ceiling
  double output_floor = 1.0e-6;          // W, regime classification floor
  double coupling_phase = 0.0;           // theta of the parametric coupling

  void validate() const;
};

// 2x2 complex map acting on (a_S, a_AS*) per round trip:
//   M = G(r, theta) * diag(sqrt(rho_S) e^{i phi_S}, sqrt(rho_AS) e^{-i phi_AS})
struct CoupledModeMap {
  std::complex<double> m00, m01, m10, m11;
  double squeeze = 0.0;  // r

  double spectral_radius() const;
  // |v_S|^2, |v_AS|^2 of the dominant eigenvector, normalized to sum 1.
  void dominant_weights(double& w_s, double& w_as) const;
  std::complex<double> det_g() const;  // must equal 1
};

CoupledModeMap coupled_map(double r, double theta, double rho_s, double phi_s,
                           double rho_as, double phi_as);

enum class Regime { Below, StokesOnly, BothAbove };
std::string regime_name(Regime r);

struct OperatingPoint {
  double pump_detuning = 0.0;   // rad/s from reference
  double omega_s = 0.0;         // Stokes detuning from reference
  double omega_as = 0.0;        // anti-Stokes detuning from reference
  double delta_cav_s = 0.0;     // Stokes offset from nearest pulled mode
  double delta_cav_as = 0.0;
  double half_linewidth_s = 0.0;   // rad/s, HWHM of that mode
  double half_linewidth_as = 0.0;
  double rho_s = 0.0;           // round-trip survival at the sidebands
  double rho_as = 0.0;
  double pzt_offset = 0.0;      // m, pump-resonant cavity length trim
  double sigma = 0.0;           // spectral radius at the probe power
  Regime regime = Regime::Below;
  double threshold_power = 0.0; // W; infinity when no oscillation below cap
  double output_s = 0.0;        // W
  double output_as = 0.0;       // W
};

struct OpoModel {
  CavityGeometry geometry;
  VaporCell cell;
  GainConfig gain;
};

// Both detunings from the isotope's effective D2 lines; the hyperfine
// constraint delta_a - delta_b = omega_12 holds by construction.
FwmDetunings detunings(double pump_detuning, Isotope isotope);

// omega_S = omega_p - omega_12, omega_AS = omega_p + omega_12 (detunings
// from the global reference).
void sideband_frequencies(double pump_detuning, Isotope isotope,
                          double& omega_s, double& omega_as);

// Circulating pump power from the Airy buildup at the pump frequency.
double pump_buildup(double pump_detuning, const CavityGeometry& geometry,
                    const VaporCell& cell, double input_power);

// Squeeze parameter r of the round-trip parametric coupling.
double parametric_strength(const FwmDetunings& det, const VaporCell& cell,
                           double circulating_power, const GainConfig& gain,
                           double two_photon_detuning = 0.0);

// Frozen per-point state shared by threshold and steady-state solvers:
// the cavity is trimmed so the pump is resonant, and the sideband
// round-trip factors are evaluated once.
struct OperatingContext {
  PumpConfig pump;
  FwmDetunings det;
  double omega_s, omega_as;
  double pzt_offset;
  double rho_pump, phi_pump;
  double rho_s, phi_s;
  double rho_as, phi_as;
  double delta_cav_s, delta_cav_as;
  double half_linewidth_s, half_linewidth_as;
  double threshold_r;  // r with sigma(M(r)) = 1 at these frequencies
};

OperatingContext make_context(const PumpConfig& pump, const OpoModel& model);

// Smallest input power with sigma(M) = 1; infinity if unreachable below
// gain.power_cap.
double threshold_power(const OperatingContext& ctx, const OpoModel& model);

// (P_S, P_AS) above threshold from gain clamping with pump depletion;
// exactly (0, 0) below threshold. Throws SolverFault on non-convergence.
void steady_state_output(const OperatingContext& ctx, const OpoModel& model,
                         double input_power, double& p_s, double& p_as);

Regime classify_regime(const OperatingContext& ctx, const OpoModel& model,
                       double input_power);

// Full operating point (threshold, steady state, classification).
OperatingPoint solve_operating_point(const PumpConfig& pump, const OpoModel& model);

// Scan pump detuning over [start, stop] with the cavity held pump-resonant.
std::vector<OperatingPoint> scan_operating_points(double start, double stop,
                                                  int points, Isotope isotope,
                                                  double input_power,
                                                  const OpoModel& model,
                                                  int threads = 1);

// Points of the scan where both sideband cavity detunings are below half a
// linewidth, sorted by sigma descending.
std::vector<OperatingPoint> triple_resonance_search(double start, double stop,
                                                    int points, Isotope isotope,
                                                    double input_power,
                                                    const OpoModel& model,
                                                    int threads = 1);

struct SolverFault : std::runtime_error {
  explicit SolverFault(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rvo
