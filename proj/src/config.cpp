#include "rvo/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace rvo {

namespace {

using nlohmann::json;

void require_keys(const json& node, const std::string& prefix,
                  const std::set<std::string>& allowed) {
  if (!node.is_object())
    throw std::invalid_argument("config: " + (prefix.empty() ? "root" : prefix) +
                                " must be an object");
  for (const auto& [key, value] : node.items()) {
    (void)value;
    if (!allowed.count(key)) {
      const std::string path = prefix.empty() ? key : prefix + "." + key;
      throw std::invalid_argument("config: unknown key \"" + path + "\"");
    }
  }
}

double get_number(const json& node, const std::string& path, const char* key,
                  double fallback) {
  if (!node.contains(key)) return fallback;
  if (!node[key].is_number())
    throw std::invalid_argument("config: \"" + path + "." + key +
                                "\" must be a number");
  return node[key].get<double>();
}

int get_int(const json& node, const std::string& path, const char* key,
            int fallback) {
  if (!node.contains(key)) return fallback;
  if (!node[key].is_number_integer())
    throw std::invalid_argument("config: \"" + path + "." + key +
                                "\" must be an integer");
  return node[key].get<int>();
}

} // namespace

RunConfig default_config() {
  RunConfig c;
  c.scenario = "fig2b";
  c.cell = default_cell();
  c.validate_and_finalize();
  return c;
}

void RunConfig::validate_and_finalize() {
  static const std::set<std::string> scenarios = {"fig2a", "fig2b", "fig3",
                                                  "fig4", "scan"};
  if (!scenarios.count(scenario))
    throw std::invalid_argument("config: \"scenario\" must be one of "
                                "fig2a/fig2b/fig3/fig4/scan");
  if (!excess_survival_given) {
    if (!(target_finesse > 0.0))
      throw std::invalid_argument("config: \"cavity.target_finesse\" must be > 0");
    cavity.excess_survival =
        calibrate_excess_loss(cavity.r1, cavity.r2, target_finesse);
  }
  cavity.validate();
  cell.validate();
  gain.validate();
  analyzer.validate();
  if (!(pump.power >= 0.0))
    throw std::invalid_argument("config: \"pump.power_w\" must be >= 0");
  if (scan.points < 2 || !(scan.stop_hz > scan.start_hz))
    throw std::invalid_argument("config: \"scan\" grid is invalid");
  if (fig3.points < 2 || !(fig3.window_stop_hz > fig3.window_start_hz))
    throw std::invalid_argument("config: \"fig3\" window is invalid");
  if (fig4.points < 2 || !(fig4.max_power_w > 0.0))
    throw std::invalid_argument("config: \"fig4\" sweep is invalid");
  if (threads < 1)
    throw std::invalid_argument("config: \"threads\" must be >= 1");
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.cell = default_cell();

  require_keys(j, "", {"scenario", "cavity", "cell", "pump", "gain", "analyzer",
                       "scan", "fig3", "fig4", "threads"});
  if (!j.contains("scenario") || !j["scenario"].is_string())
    throw std::invalid_argument("config: \"scenario\" (string) is required");
  c.scenario = j["scenario"].get<std::string>();
  c.threads = get_int(j, "", "threads", 1);

  if (j.contains("cavity")) {
    const json& node = j["cavity"];
    require_keys(node, "cavity",
                 {"total_length_m", "cell_length_m", "r1", "r2",
                  "target_finesse", "excess_survival", "pzt_offset_m"});
    c.cavity.total_length =
        get_number(node, "cavity", "total_length_m", c.cavity.total_length);
    c.cavity.cell_length =
        get_number(node, "cavity", "cell_length_m", c.cavity.cell_length);
    c.cavity.r1 = get_number(node, "cavity", "r1", c.cavity.r1);
    c.cavity.r2 = get_number(node, "cavity", "r2", c.cavity.r2);
    c.target_finesse =
        get_number(node, "cavity", "target_finesse", c.target_finesse);
    c.cavity.pzt_offset =
        get_number(node, "cavity", "pzt_offset_m", c.cavity.pzt_offset);
    if (node.contains("excess_survival")) {
      c.cavity.excess_survival =
          get_number(node, "cavity", "excess_survival", 1.0);
      c.excess_survival_given = true;
    }
    if (!(c.cavity.r1 > 0.0) || c.cavity.r1 > 1.0)
      throw std::invalid_argument("config: \"cavity.r1\" must be in (0, 1]");
    if (!(c.cavity.r2 > 0.0) || c.cavity.r2 > 1.0)
      throw std::invalid_argument("config: \"cavity.r2\" must be in (0, 1]");
  }

  if (j.contains("cell")) {
    const json& node = j["cell"];
    require_keys(node, "cell",
                 {"temperature_k", "temperature_c", "length_m", "density_scale",
                  "gamma_hz", "chi_prefactor", "isotopes"});
    if (node.contains("temperature_k") && node.contains("temperature_c"))
      throw std::invalid_argument(
          "config: give \"cell.temperature_k\" or \"cell.temperature_c\", not both");
    if (node.contains("temperature_c"))
      c.cell.temperature = get_number(node, "cell", "temperature_c", 105.0) + 273.15;
    else
      c.cell.temperature =
          get_number(node, "cell", "temperature_k", c.cell.temperature);
    c.cell.length = get_number(node, "cell", "length_m", c.cell.length);
    c.cell.density_scale =
        get_number(node, "cell", "density_scale", c.cell.density_scale);
    const double gamma_hz = get_number(node, "cell", "gamma_hz", 6.0666e6);
    c.cell.natural_width = kTwoPi * gamma_hz;
    c.cell.chi_prefactor =
        get_number(node, "cell", "chi_prefactor", c.cell.chi_prefactor);
    if (node.contains("isotopes")) {
      if (!node["isotopes"].is_array() || node["isotopes"].empty())
        throw std::invalid_argument(
            "config: \"cell.isotopes\" must be a nonempty array");
      c.cell.isotopes.clear();
      for (const auto& tag : node["isotopes"])
        c.cell.isotopes.push_back(isotope_spec(parse_isotope(tag.get<std::string>())));
    }
  }
  // Keep the intracavity cell length and the cavity budget consistent.
  c.cavity.cell_length = c.cell.length;

  if (j.contains("pump")) {
    const json& node = j["pump"];
    require_keys(node, "pump", {"power_w", "isotope", "detuning_hz"});
    c.pump.power = get_number(node, "pump", "power_w", c.pump.power);
    c.pump.detuning =
        kTwoPi * get_number(node, "pump", "detuning_hz", c.pump.detuning / kTwoPi);
    if (node.contains("isotope"))
      c.pump.isotope = parse_isotope(node["isotope"].get<std::string>());
  }

  if (j.contains("gain")) {
    const json& node = j["gain"];
    require_keys(node, "gain",
                 {"coupling", "one_photon_scale_hz", "two_photon_width_hz",
                  "saturation_power_w", "pump_depletion_power_w", "power_cap_w",
                  "output_floor_w", "coupling_phase"});
    c.gain.coupling = get_number(node, "gain", "coupling", c.gain.coupling);
    c.gain.one_photon_scale = kTwoPi * get_number(node, "gain", "one_photon_scale_hz",
                                                  c.gain.one_photon_scale / kTwoPi);
    c.gain.two_photon_width = kTwoPi * get_number(node, "gain", "two_photon_width_hz",
                                                  c.gain.two_photon_width / kTwoPi);
    c.gain.saturation_power =
        get_number(node, "gain", "saturation_power_w", c.gain.saturation_power);
    c.gain.pump_depletion_power = get_number(node, "gain", "pump_depletion_power_w",
                                             c.gain.pump_depletion_power);
    c.gain.power_cap = get_number(node, "gain", "power_cap_w", c.gain.power_cap);
    c.gain.output_floor =
        get_number(node, "gain", "output_floor_w", c.gain.output_floor);
    c.gain.coupling_phase =
        get_number(node, "gain", "coupling_phase", c.gain.coupling_phase);
  }

  if (j.contains("analyzer")) {
    const json& node = j["analyzer"];
    require_keys(node, "analyzer", {"fsr_hz", "linewidth_hz", "span_hz", "points"});
    c.analyzer.fsr_hz = get_number(node, "analyzer", "fsr_hz", c.analyzer.fsr_hz);
    c.analyzer.linewidth_hz =
        get_number(node, "analyzer", "linewidth_hz", c.analyzer.linewidth_hz);
    c.analyzer.span_hz = get_number(node, "analyzer", "span_hz", c.analyzer.span_hz);
    c.analyzer.points = get_int(node, "analyzer", "points", c.analyzer.points);
  }

  if (j.contains("scan")) {
    const json& node = j["scan"];
    require_keys(node, "scan", {"start_hz", "stop_hz", "points"});
    c.scan.start_hz = get_number(node, "scan", "start_hz", c.scan.start_hz);
    c.scan.stop_hz = get_number(node, "scan", "stop_hz", c.scan.stop_hz);
    c.scan.points = get_int(node, "scan", "points", c.scan.points);
  }

  if (j.contains("fig3")) {
    const json& node = j["fig3"];
    require_keys(node, "fig3",
                 {"isotope", "window_start_hz", "window_stop_hz", "points"});
    if (node.contains("isotope"))
      c.fig3.isotope = parse_isotope(node["isotope"].get<std::string>());
    c.fig3.window_start_hz =
        get_number(node, "fig3", "window_start_hz", c.fig3.window_start_hz);
    c.fig3.window_stop_hz =
        get_number(node, "fig3", "window_stop_hz", c.fig3.window_stop_hz);
    c.fig3.points = get_int(node, "fig3", "points", c.fig3.points);
  }

  if (j.contains("fig4")) {
    const json& node = j["fig4"];
    require_keys(node, "fig4", {"max_power_w", "points"});
    c.fig4.max_power_w = get_number(node, "fig4", "max_power_w", c.fig4.max_power_w);
    c.fig4.points = get_int(node, "fig4", "points", c.fig4.points);
  }

  c.validate_and_finalize();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: JSON parse error in " + path + ": " +
                                e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
  json j;
  j["scenario"] = c.scenario;
  j["threads"] = c.threads;
  j["cavity"] = {{"total_length_m", c.cavity.total_length},
                 {"cell_length_m", c.cavity.cell_length},
                 {"r1", c.cavity.r1},
                 {"r2", c.cavity.r2},
                 {"target_finesse", c.target_finesse},
                 {"excess_survival", c.cavity.excess_survival},
                 {"pzt_offset_m", c.cavity.pzt_offset}};
  json isotopes = json::array();
  for (const auto& iso : c.cell.isotopes) isotopes.push_back(isotope_name(iso.name));
  j["cell"] = {{"temperature_k", c.cell.temperature},
               {"length_m", c.cell.length},
               {"density_scale", c.cell.density_scale},
               {"gamma_hz", (c.cell.natural_width > 0.0 ? c.cell.natural_width
                                                        : kDefaultNaturalWidth) /
                                kTwoPi},
               {"chi_prefactor", c.cell.chi_prefactor},
               {"isotopes", isotopes}};
  j["pump"] = {{"power_w", c.pump.power},
               {"isotope", isotope_name(c.pump.isotope)},
               {"detuning_hz", c.pump.detuning / kTwoPi}};
  j["gain"] = {{"coupling", c.gain.coupling},
               {"one_photon_scale_hz", c.gain.one_photon_scale / kTwoPi},
               {"two_photon_width_hz", c.gain.two_photon_width / kTwoPi},
               {"saturation_power_w", c.gain.saturation_power},
               {"pump_depletion_power_w", c.gain.pump_depletion_power},
               {"power_cap_w", c.gain.power_cap},
               {"output_floor_w", c.gain.output_floor},
               {"coupling_phase", c.gain.coupling_phase}};
  j["analyzer"] = {{"fsr_hz", c.analyzer.fsr_hz},
                   {"linewidth_hz", c.analyzer.linewidth_hz},
                   {"span_hz", c.analyzer.span_hz},
                   {"points", c.analyzer.points}};
  j["scan"] = {{"start_hz", c.scan.start_hz},
               {"stop_hz", c.scan.stop_hz},
               {"points", c.scan.points}};
  j["fig3"] = {{"isotope", isotope_name(c.fig3.isotope)},
               {"window_start_hz", c.fig3.window_start_hz},
               {"window_stop_hz", c.fig3.window_stop_hz},
               {"points", c.fig3.points}};
  j["fig4"] = {{"max_power_w", c.fig4.max_power_w}, {"points", c.fig4.points}};
  return j;
}

} // namespace rvo
