#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "heatwell/commands.hpp"
#include "heatwell/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"heatwell: potential-well laboratory for u_t - Lap u = |u|^{p-1}u"};
  app.fallthrough();

  std::string config_path;
  heatwell::CmdOptions options;
  app.add_option("--config", config_path, "JSON experiment config");
  app.add_option("--output", options.output_dir, "output directory")
      ->capture_default_str();
  app.add_option("--threads", options.threads, "worker threads for sweep")
      ->capture_default_str();
  app.add_option("--seed", options.seed, "seed for randomized checks")
      ->capture_default_str();

  CLI::App* check = app.add_subcommand("check", "internal consistency checks");
  CLI::App* functionals =
      app.add_subcommand("functionals", "E, I, Nehari scaling of the datum");
  CLI::App* evolve =
      app.add_subcommand("evolve", "integrate the rescaled flow, write trace");
  CLI::App* sweep =
      app.add_subcommand("sweep", "classify a grid of Gaussian data");
  CLI::App* welldepth =
      app.add_subcommand("welldepth", "variational upper bound on d");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    const heatwell::ExperimentConfig cfg =
        config_path.empty() ? heatwell::ExperimentConfig{}
                            : heatwell::load_config(config_path);
    if (*check) return heatwell::cmd_check(cfg, options);
    if (*functionals) return heatwell::cmd_functionals(cfg, options);
    if (*evolve) return heatwell::cmd_evolve(cfg, options);
    if (*sweep) return heatwell::cmd_sweep(cfg, options);
    if (*welldepth) return heatwell::cmd_welldepth(cfg, options);
  } catch (const heatwell::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
