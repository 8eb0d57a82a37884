#include "rvo/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

namespace rvo {

namespace {

using nlohmann::json;

json point_to_json(const OperatingPoint& pt) {
  json j;
  j["pump_detuning_hz"] = pt.pump_detuning / kTwoPi;
  j["stokes_detuning_hz"] = pt.omega_s / kTwoPi;
  j["anti_stokes_detuning_hz"] = pt.omega_as / kTwoPi;
  j["stokes_cavity_detuning_hz"] = pt.delta_cav_s / kTwoPi;
  j["anti_stokes_cavity_detuning_hz"] = pt.delta_cav_as / kTwoPi;
  j["stokes_survival"] = pt.rho_s;
  j["anti_stokes_survival"] = pt.rho_as;
  j["pzt_offset_m"] = pt.pzt_offset;
  j["sigma"] = pt.sigma;
  j["regime"] = regime_name(pt.regime);
  j["threshold_power_w"] = std::isfinite(pt.threshold_power)
                               ? json(pt.threshold_power)
                               : json(nullptr);
  j["output_stokes_w"] = pt.output_s;
  j["output_anti_stokes_w"] = pt.output_as;
  return j;
}

OpoModel model_of(const RunConfig& c) { return {c.cavity, c.cell, c.gain}; }

} // namespace

RunManifest run_scenario(const RunConfig& config, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  std::filesystem::create_directories(out_dir);
  auto path = [&](const std::string& name) { return out_dir + "/" + name; };

  RunManifest manifest;
  manifest.scenario = config.scenario;
  json derived;
  const double fsr = empty_fsr(config.cavity);
  derived["fsr_hz"] = fsr;
  derived["finesse"] = config.target_finesse;
  derived["hwhm_hz"] = fsr / (2.0 * config.target_finesse);
  derived["escape_efficiency"] = escape_efficiency(config.cavity);
  derived["excess_survival"] = config.cavity.excess_survival;

  const double start = kTwoPi * config.scan.start_hz;
  const double stop = kTwoPi * config.scan.stop_hz;

  if (config.scenario == "fig2a") {
    const auto trace = absorption_trace(start, stop, config.scan.points,
                                        config.cell, config.threads);
    write_trace(trace, path("fig2a_absorption.csv"));
    manifest.outputs.push_back("fig2a_absorption.csv");
  } else if (config.scenario == "fig2b") {
    const auto with = cavity_trace(start, stop, config.scan.points, config.cavity,
                                   config.cell, true, config.threads);
    const auto empty = cavity_trace(start, stop, config.scan.points, config.cavity,
                                    config.cell, false, config.threads);
    write_trace(with, path("fig2b_cavity_with_atoms.csv"));
    write_trace(empty, path("fig2b_cavity_empty.csv"));
    manifest.outputs.push_back("fig2b_cavity_with_atoms.csv");
    manifest.outputs.push_back("fig2b_cavity_empty.csv");
  } else if (config.scenario == "fig3") {
    const OpoModel model = model_of(config);
    const auto points = scan_operating_points(
        kTwoPi * config.fig3.window_start_hz, kTwoPi * config.fig3.window_stop_hz,
        config.fig3.points, config.fig3.isotope, config.pump.power, model,
        config.threads);
    json report = json::array();
    int best_both = -1, best_stokes = -1;
    for (size_t i = 0; i < points.size(); ++i) {
      const auto& pt = points[i];
      if (pt.regime == Regime::BothAbove &&
          (best_both < 0 || pt.sigma > points[static_cast<size_t>(best_both)].sigma))
        best_both = static_cast<int>(i);
      if (pt.regime == Regime::StokesOnly &&
          (best_stokes < 0 ||
           pt.sigma > points[static_cast<size_t>(best_stokes)].sigma))
        best_stokes = static_cast<int>(i);
      if (pt.regime != Regime::Below) report.push_back(point_to_json(pt));
    }
    auto emit_trace = [&](const OperatingPoint& pt, const std::string& name) {
      EmissionSet emissions;
      // The pump peak height is representative only; analyzer peak
      // heights are not calibrated quantities.
      emissions.push_back({0.0, config.pump.power * config.cavity.t1(),
                           EmissionLabel::Pump});
      emissions.push_back({(pt.omega_s - pt.pump_detuning) / kTwoPi, pt.output_s,
                           EmissionLabel::Stokes});
      emissions.push_back({(pt.omega_as - pt.pump_detuning) / kTwoPi,
                           pt.output_as, EmissionLabel::AntiStokes});
      write_trace(analyzer_trace(emissions, config.analyzer), path(name));
      manifest.outputs.push_back(name);
    };
    if (best_both >= 0)
      emit_trace(points[static_cast<size_t>(best_both)], "fig3_both_above.csv");
    if (best_stokes >= 0)
      emit_trace(points[static_cast<size_t>(best_stokes)], "fig3_stokes_only.csv");
    derived["oscillating_points"] = report;
    const auto triple =
        triple_resonance_search(kTwoPi * config.fig3.window_start_hz,
                                kTwoPi * config.fig3.window_stop_hz,
                                config.fig3.points, config.fig3.isotope,
                                config.pump.power, model, config.threads);
    json triple_json = json::array();
    for (const auto& pt : triple) triple_json.push_back(point_to_json(pt));
    derived["triple_resonant_points"] = triple_json;
  } else if (config.scenario == "fig4") {
    const OpoModel model = model_of(config);
    const OperatingContext ctx = make_context(config.pump, model);
    SpectrumTrace curve;
    curve.x_label = "input_power_w";
    curve.y_label = "total_output_w";
    curve.start_hz = 0.0;
    curve.step_hz =
        config.fig4.max_power_w / static_cast<double>(config.fig4.points - 1);
    curve.values.assign(static_cast<size_t>(config.fig4.points), 0.0);
    for (int i = 0; i < config.fig4.points; ++i) {
      double p_s = 0.0, p_as = 0.0;
      steady_state_output(ctx, model, curve.frequency(static_cast<size_t>(i)),
                          p_s, p_as);
      curve.values[static_cast<size_t>(i)] = p_s + p_as;
    }
    write_trace(curve, path("fig4_threshold_curve.csv"));
    manifest.outputs.push_back("fig4_threshold_curve.csv");
    const double p_th = threshold_power(ctx, model);
    derived["threshold_power_w"] =
        std::isfinite(p_th) ? json(p_th) : json(nullptr);
  } else if (config.scenario == "scan") {
    const OpoModel model = model_of(config);
    const auto points = scan_operating_points(start, stop, config.scan.points,
                                              config.pump.isotope,
                                              config.pump.power, model,
                                              config.threads);
    SpectrumTrace sigma, output;
    sigma.start_hz = config.scan.start_hz;
    sigma.step_hz = (config.scan.stop_hz - config.scan.start_hz) /
                    static_cast<double>(config.scan.points - 1);
    sigma.y_label = "sigma";
    output = sigma;
    output.y_label = "total_output_w";
    for (const auto& pt : points) {
      sigma.values.push_back(pt.sigma);
      output.values.push_back(pt.output_s + pt.output_as);
    }
    write_trace(sigma, path("scan_sigma.csv"));
    write_trace(output, path("scan_output.csv"));
    manifest.outputs.push_back("scan_sigma.csv");
    manifest.outputs.push_back("scan_output.csv");
  } else {
    throw std::invalid_argument("run_scenario: unknown scenario " +
                                config.scenario);
  }

  const auto t1 = std::chrono::steady_clock::now();
  manifest.duration_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  json m;
  m["version"] = kVersion;
  m["scenario"] = manifest.scenario;
  m["config"] = config_to_json(config);
  m["derived"] = derived;
  m["outputs"] = manifest.outputs;
  m["duration_ms"] = manifest.duration_ms;
  std::ofstream out(path("manifest.json"), std::ios::binary);
  if (!out)
    throw std::runtime_error("run_scenario: cannot write manifest.json");
  out << m.dump(2) << "\n";
  return manifest;
}

} // namespace rvo
