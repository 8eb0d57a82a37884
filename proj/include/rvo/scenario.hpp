// scenario.hpp - named figure-reproduction scenarios; each writes one CSV
// per trace plus a manifest JSON into the output directory.
#pragma once

#include "rvo/config.hpp"

#include <string>
#include <vector>

namespace rvo {

struct RunManifest {
  std::string scenario;
  std::vector<std::string> outputs;   // files written, relative to out_dir
  double duration_ms = 0.0;
  // derived quantities are added directly to the JSON
};

// Runs config.scenario and returns the manifest; also writes
// <out_dir>/manifest.json.
RunManifest run_scenario(const RunConfig& config, const std::string& out_dir);

} // namespace rvo
