#pragma once

#include <cstdint>
#include <string>

#include "heatwell/config.hpp"

namespace heatwell {

struct CmdOptions {
  std::string output_dir = ".";
  int threads = 1;
  std::uint64_t seed = 12345;
};

// Exit codes shared with the CLI: 0 = completed (including Inconclusive
// verdicts), 1 = config error, 2 = internal check failure.  Each command
// writes its artifacts under options.output_dir and a short summary to
// stdout.

// Runs the cross-module invariant suite (oracle/quadrature agreement, Kavian
// bounds, operator self-adjointness and eigenfunction residual, Nehari root
// cross-check) and writes check_report.json; returns 2 if any check fails.
int cmd_check(const ExperimentConfig& config, const CmdOptions& options);

// FunctionalReport + NehariScaling + classification of the configured initial
// datum -> functionals.json.
int cmd_functionals(const ExperimentConfig& config, const CmdOptions& options);

// Evolves the configured datum -> evolve_trace.csv + evolve_outcome.json
// (verdict, blow-up interval, diagnostics summary).
int cmd_evolve(const ExperimentConfig& config, const CmdOptions& options);

// One evolve per (a, b) in the sweep grid -> sweep.csv, rows in lexicographic
// (a, b) order regardless of thread count.
int cmd_sweep(const ExperimentConfig& config, const CmdOptions& options);

// Well-depth estimate, d_eps table and the Lemma 3.3 same-family check
// -> welldepth.json.
int cmd_welldepth(const ExperimentConfig& config, const CmdOptions& options);

}  // namespace heatwell
