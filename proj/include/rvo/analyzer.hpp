// analyzer.hpp - synthesized display traces: the Doppler absorption
// spectrum, the intracavity transmission pair, and the scanned Fabry-Perot
// analyzer view of the emitted fields.
#pragma once

#include "rvo/atomic_medium.hpp"
#include "rvo/cavity.hpp"
#include "rvo/trace.hpp"

#include <string>
#include <vector>

namespace rvo {

struct AnalyzerConfig {
  double fsr_hz = 10.0e9;
  double linewidth_hz = 30.0e6;  // FWHM
  double span_hz = 18.0e9;       // symmetric about the pump
  int points = 7201;

  void validate() const;
};

enum class EmissionLabel { Pump, Stokes, AntiStokes };

struct Emission {
  double offset_hz;  // from the pump frequency
  double power;      // W
  EmissionLabel label;
};

using EmissionSet = std::vector<Emission>;

std::string emission_label_name(EmissionLabel label);

// Single-pass transmission exp(-alpha L) over a detuning grid (rad/s).
SpectrumTrace absorption_trace(double start, double stop, int points,
                               const VaporCell& cell, int threads = 1);

// Cavity transmission with or without the atoms.
SpectrumTrace cavity_trace(double start, double stop, int points,
                           const CavityGeometry& geometry, const VaporCell& cell,
                           bool with_atoms, int threads = 1);

// Sum of power-weighted Airy combs, one per emission; the comb period is
// the analyzer FSR, so replicas appear at +-k*FSR.
SpectrumTrace analyzer_trace(const EmissionSet& emissions,
                             const AnalyzerConfig& analyzer);

} // namespace rvo
