#pragma once

#include <optional>

#include "heatwell/grid.hpp"
#include "heatwell/params.hpp"
#include "heatwell/trace.hpp"

namespace heatwell {

// Time-integration control for the rescaled equation
//   w_s + L w = |w|^{p-1} w + w/(p-1).
struct SolverConfig {
  double dt_init = 1e-3;
  double dt_min = 1e-10;
  double s_max = 20.0;
  double blowup_threshold = 1e8;  // sup-norm cutoff
  double growth_cap = 1.5;        // per-step sup ratio that triggers dt halving
  int record_every = 1;           // trace decimation (1 = every accepted step)

  void validate() const;  // throws std::invalid_argument naming the field
};

// Divergence-form discretization of L = -K^{-1} ∇·(K ∇·) on the radial grid:
//   (L_h w)_i = -[sigma_i (w_{i+1}-w_i) - sigma_{i-1} (w_i-w_{i-1})] / (h^2 mu_i)
// with the symmetric Neumann closure at the axis (w'(0) = 0) and Dirichlet
// zero at r_max.  Exactly self-adjoint and positive semi-definite in
// discrete_dot_k.
Field apply_l(const Field& w);

// Solves (Id + dt L_h) w_new = w: the implicit half of the IMEX step with the
// source switched off.  Unconditionally contractive in discrete_dot_k.
Field step_linear(const Field& w, double dt);

// One IMEX step: explicit nonlinearity and linear source, implicit L_h,
//   (Id + dt L_h) w_new = w + dt (|w|^{p-1} w + w/(p-1)).
// Returns nullopt when the right-hand side or the solution is not finite
// (consumed by evolve's step-size control).
std::optional<Field> step(const Field& w, double dt, const Parameters& params);

// Integrates from s = 0 with adaptive step control: a step is rejected and dt
// halved when it is non-finite or multiplies the sup-norm by more than
// growth_cap; after 20 calm steps dt doubles back toward dt_init.  BlowUp is
// declared when the sup-norm crosses blowup_threshold or dt underflows dt_min
// while the sup-norm is growing; the failed/crossing step brackets T_s.
// Reaching s_max with bounded norms is Global; a dt underflow without growth
// is Inconclusive with the reason recorded.
//
// d_est > 0 enables the heuristic classification tiers for the initial datum;
// with d_est <= 0 only Zero/ExteriorCertified are recognized.
SimulationTrace evolve(const Field& u0, const Parameters& params,
                       const SolverConfig& config, double d_est = 0.0);

}  // namespace heatwell
