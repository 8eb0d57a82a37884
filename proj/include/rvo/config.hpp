// config.hpp - run configuration: JSON ingestion with strict schema
// validation, defaults, and the derived-quantity manifest.
#pragma once

#include "rvo/analyzer.hpp"
#include "rvo/fwm.hpp"

#include <string>

#include <nlohmann/json_fwd.hpp>

namespace rvo {

inline constexpr const char* kVersion = "0.1.0";

struct ScanConfig {
  double start_hz = -15.0e9;
  double stop_hz = 15.0e9;
  int points = 20001;
};

struct Fig3Config {
  Isotope isotope = Isotope::Rb87;
  double window_start_hz = -4.4e9;
  double window_stop_hz = -3.0e9;
  int points = 1401;
};

struct Fig4Config {
  double max_power_w = 0.15;
  int points = 151;
};

struct RunConfig {
  std::string scenario;
  CavityGeometry cavity;        // excess_survival filled by calibration
  double target_finesse = 20.0;
  bool excess_survival_given = false;
  VaporCell cell;
  PumpConfig pump;
  GainConfig gain;
  AnalyzerConfig analyzer;
  ScanConfig scan;
  Fig3Config fig3;
  Fig4Config fig4;
  int threads = 1;

  void validate_and_finalize();  // calibrates a_x, checks invariants
};

// Parse + validate. Unknown keys are rejected with the offending dotted
// path; invariant violations name the key.
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig default_config();

nlohmann::json config_to_json(const RunConfig& config);

} // namespace rvo
