#pragma once

#include <string>
#include <vector>

#include "heatwell/functionals.hpp"
#include "heatwell/params.hpp"

namespace heatwell {

// Scalar diagnostics for one accepted step of the rescaled flow.  m, m_prime
// and m_double_prime are filled by diagnostics::m_functionals; everything
// else is recorded by the solver as the trajectory is produced.
struct TraceRow {
  double s = 0.0;
  double t = 0.0;   // e^s - 1
  double dt = 0.0;  // step that produced this row; 0 for the initial row
  double energy = 0.0;
  double nehari = 0.0;
  double l2k_sq = 0.0;
  double sup_norm = 0.0;
  double h1k_sq = 0.0;             // l2k_sq + grad_sq
  double m = 0.0;                  // M(s) = 1/2 ∫_0^s ||w||^2_{L^2(K)} dτ
  double m_prime = 0.0;            // M'(s) = l2k_sq / 2
  double m_double_prime = 0.0;     // M''(s) = -I(w(s))
  double dissipation_accum = 0.0;  // ∫_0^s ||w_τ||^2_{L^2(K)} dτ
};

enum class Verdict { Global, BlowUp, Inconclusive };

std::string to_string(Verdict v);

struct RunOutcome {
  Classification classification = Classification::Indeterminate;
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;  // set for Inconclusive

  // Blow-up bracket: ts_lo is the last accepted s, ts_hi adds the step that
  // could not be completed; T_s is reported as the midpoint and T in the
  // original clock via T = e^{T_s} - 1.
  bool has_blowup = false;
  double ts_lo = 0.0;
  double ts_hi = 0.0;
  double ts_mid = 0.0;
  double t_blowup = 0.0;

  double max_h1k_sq = 0.0;
  double max_sup_norm = 0.0;
};

struct SimulationTrace {
  Parameters params;
  std::vector<TraceRow> rows;  // strictly increasing in s
  RunOutcome outcome;
};

}  // namespace heatwell
