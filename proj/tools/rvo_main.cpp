// rvo - figure-reproduction scenarios and parameter scans for the
// intracavity four-wave-mixing OPO model.
//
// Exit codes: 0 success, 2 configuration error, 3 solver fault.

#include "rvo/scenario.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

int main(int argc, char** argv) {
  CLI::App app{"rubidium-vapor triply-resonant OPO simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;

  const std::vector<std::string> scenarios = {"fig2a", "fig2b", "fig3", "fig4",
                                              "scan"};
  for (const auto& name : scenarios) {
    auto* sub = app.add_subcommand(name, "run the \"" + name + "\" scenario");
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out-dir", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads (default 1)");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string scenario = app.get_subcommands().front()->get_name();

  try {
    rvo::RunConfig config =
        config_path.empty() ? rvo::default_config() : rvo::load_config(config_path);
    config.scenario = scenario;

    if (threads <= 0)
      if (const char* env = std::getenv("RVO_THREADS"))
        threads = std::atoi(env);
    if (threads > 0) config.threads = threads;
    config.validate_and_finalize();

    const rvo::RunManifest manifest = rvo::run_scenario(config, out_dir);
    std::cout << "scenario " << manifest.scenario << ": wrote "
              << manifest.outputs.size() << " trace file(s) + manifest.json to "
              << out_dir << " in " << manifest.duration_ms << " ms\n";
    return 0;
  } catch (const rvo::SolverFault& e) {
    std::cerr << "solver fault in scenario " << scenario << ": " << e.what()
              << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error in scenario " << scenario << ": " << e.what() << "\n";
    return 3;
  }
}
