#pragma once

#include "heatwell/grid.hpp"
#include "heatwell/params.hpp"

namespace heatwell {

// Gaussian weight K(y) = exp(|y|^2/4); finite in double precision for
// r <= 40, which the grid invariant r_max <= 40 guarantees.
double weight_k(double r);

// Surface area of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

// Trapezoidal approximation of sphere_area(n) * ∫_0^{r_max} g(r) r^{n-1} K(r) dr.
// The caller supplies the integrand already raised to any power.  Throws if
// the result is not finite (field growing faster than the weight decays).
double integrate_weighted(const Field& g);

// ∫ |w|^2 K dy.
double l2k_norm_sq(const Field& w);

// ∫ |∇w|^2 K dy from staggered finite differences: the squared radial
// derivative is evaluated at interval midpoints (matching the sigma weights
// of the divergence-form operator) with a fourth-order stencil, so the
// quadrature error of the Gaussian test integrals stays at the 1e-6 level
// already on moderate grids.
double grad_l2k_sq(const Field& w);

// ∫ |w|^{p+1} K dy.
double lp1k_norm(const Field& w, const Parameters& params);

// l2k_norm_sq + grad_l2k_sq, the squared H^1(K) norm.
double h1k_norm_sq(const Field& w);

// grad_l2k_sq / l2k_norm_sq; Lemma 2.1(iii) bounds this below by n/2 with
// equality for w = exp(-r^2/4).  Throws on the zero field.
double kavian_ratio(const Field& w);

// max_i |w_i|.
double sup_norm(const Field& w);

// Discrete inner product sphere_area(n) * h * Σ mu_i f_i g_i built from the
// finite-volume cell measures; this is the inner product under which the
// discrete operator L_h is exactly self-adjoint (summation by parts).
double discrete_dot_k(const Field& f, const Field& g);

}  // namespace heatwell
