#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "heatwell/trace.hpp"

namespace heatwell {

// Shortest fixed formatting that round-trips doubles: %.17g.
std::string fmt17(double x);

// CSV with exactly the columns
//   s,t,dt,E,I,l2k_sq,h1k_sq,sup_norm,M,M_prime,M_double_prime,
//   dissipation_accum,energy_residual
// one row per recorded step, '\n' line endings.  residuals must come from
// energy_ledger on the same trace.
void write_trace_csv(std::ostream& out, const SimulationTrace& trace,
                     const std::vector<double>& residuals);

struct SweepRow {
  double a = 0.0;
  double b = 0.0;
  double e0 = 0.0;
  double i0 = 0.0;
  std::string classification;
  std::string verdict;
  std::optional<double> ts_mid;
  double max_h1k = 0.0;
  std::string status = "ok";
};

// CSV columns: a,b,E0,I0,classification,verdict,T_s_mid,max_h1k,status;
// T_s_mid is empty for runs that did not blow up.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace heatwell
