#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "heatwell/trace.hpp"

namespace heatwell {

// Residuals of the energy identity E(u0) - E(w(s_k)) = ∫_0^{s_k} ||w_τ||^2 dτ,
// one per recorded row; the dissipation integral uses the per-step difference
// quotient, so the residual is first-order in dt.
std::vector<double> energy_ledger(const SimulationTrace& trace);

// Fills m (trapezoidal accumulation of l2k_sq/2 over the recorded rows),
// m_prime = l2k_sq/2 and m_double_prime = -nehari, in place.
void m_functionals(SimulationTrace& trace);

// Independent consistency check of M'' = -I: compares the finite-difference
// derivative of M' against -I at pair midpoints.  scale is the trajectory
// scale max(1, max |ΔI/Δs|); max_ratio is max residual / (Δs * scale), which
// Taylor consistency bounds by O(1) — the acceptance bound is 5.  Pairs with
// sup_norm above sup_cap on either end are excluded (under-resolved tail of a
// blow-up trajectory).
struct MPrimeConsistency {
  double max_residual = 0.0;
  double scale = 1.0;
  double max_ratio = 0.0;
  int pairs_checked = 0;
};

MPrimeConsistency m_prime_consistency(
    const SimulationTrace& trace,
    double sup_cap = std::numeric_limits<double>::infinity());

// Scans for the first strict sign change of I(w(s)) relative to the initial
// sign; Prop. 3.2 (invariance of W and Z) forbids one on resolved
// trajectories.
struct InvarianceReport {
  int initial_sign = 0;  // sign of I(u0): -1, 0, +1
  bool flipped = false;
  double first_flip_s = 0.0;
};

InvarianceReport invariance_monitor(const SimulationTrace& trace);

// First recorded s where ((n(p-1)-2)/4) ||w(s)||^2_{L^2(K)} > (p+1) E(u0) —
// the numerically detected onset s' of Eq. (3.5)'s condition (for data with
// E(u0) <= 0 this holds from s = 0).  nullopt if never observed.
std::optional<double> detect_s_prime(const SimulationTrace& trace);

// epsilon_1 = min(-I(u0), d_est - E(u0)) clipped at 0; the Z-trajectory
// growth bound M'' >= epsilon_1 applies only when the unclipped value is
// positive.
double epsilon1(const SimulationTrace& trace, double d_est);

// Cauchy–Schwarz surrogate of the Levine chain (Eqs. 3.5–3.7): past s',
//   M(s) M''(s) >= ((p+1)/2) (M'(s) - M'(0))^2.
// min_slack_rel is the minimum over checked rows of slack / max(1, rhs).
// Requires m_functionals to have run.  applicable = false when s' was never
// detected.
struct ConcavityCheck {
  bool applicable = false;
  double s_prime = 0.0;
  double min_slack = 0.0;
  double min_slack_rel = 0.0;
  int rows_checked = 0;
};

ConcavityCheck cauchy_schwarz_surrogate(const SimulationTrace& trace);

// Consolidates the solver outcome with trace-level evidence: max H^1(K) and
// sup norms, blow-up interval midpoint, and T = e^{T_s} - 1.
RunOutcome verdict(const SimulationTrace& trace);

}  // namespace heatwell
