#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "heatwell/functionals.hpp"
#include "heatwell/params.hpp"
#include "heatwell/solver.hpp"

namespace heatwell {

// Raised for any malformed or invalid configuration; the message names the
// exact field and constraint (e.g. "config: solver.dt_min: must satisfy
// 0 < dt_min <= dt_init").
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GridSpec {
  double r_max = 16.0;
  int num_points = 4096;
};

struct InitialSpec {
  std::string family = "gaussian";
  double a = 0.5;
  double b = 0.5;
};

struct SweepSpec {
  std::vector<double> a_values{0.5};
  std::vector<double> b_values{0.25, 0.5, 1.0, 2.0, 3.5};
};

// One JSON document configures every subcommand; missing sections fall back
// to these defaults.  See configs/ for annotated samples.
struct ExperimentConfig {
  Parameters params;
  GridSpec grid;
  SolverConfig solver;
  InitialSpec initial;
  SweepSpec sweep;
  GaussianFamilySpec well_family;
  std::vector<double> eps_values{0.01, 0.1, 0.5};
};

// Parses and fully validates a config document; unknown keys are rejected so
// typos cannot silently fall back to defaults.
ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& source_name);

ExperimentConfig load_config(const std::string& path);

}  // namespace heatwell
