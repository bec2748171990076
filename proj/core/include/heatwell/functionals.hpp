#pragma once

#include <string>
#include <vector>

#include "heatwell/grid.hpp"
#include "heatwell/params.hpp"

namespace heatwell {

// All weighted integrals of one field plus the derived energy and Nehari
// values:
//   E(w) = grad_sq/2 - l2k_sq/(2(p-1)) - lp1/(p+1)
//   I(w) = grad_sq - l2k_sq/(p-1) - lp1
struct FunctionalReport {
  double l2k_sq = 0.0;
  double grad_sq = 0.0;
  double lp1 = 0.0;
  double energy = 0.0;
  double nehari = 0.0;
  double sup_norm = 0.0;
};

FunctionalReport report(const Field& w, const Parameters& params);

// Along the ray b -> bw the functionals reduce to two coefficients,
//   I(bw) = b^2 Q - b^{p+1} A,   E(bw) = b^2 Q / 2 - b^{p+1} A / (p+1),
// with Q = grad_sq - l2k_sq/(p-1) and A = lp1.  Q > 0 for every nonzero
// admissible field (Lemma 2.1(iii) plus p > 1 + 2/n), so I(bw) has the
// unique positive root b* = (Q/A)^{1/(p-1)} — the Nehari-manifold crossing.
struct NehariScaling {
  double q_coeff;
  double a_coeff;
  double b_star;
};

NehariScaling nehari_scaling(const Field& w, const Parameters& params);

struct RayPoint {
  double b;
  double energy;
  double nehari;
};

std::vector<RayPoint> energy_on_ray(const Field& w, const Parameters& params,
                                    const std::vector<double>& b_values);

// Root of b^2 Q - b^{p+1} A = target by bracketed bisection; independent
// cross-check of the closed form (target = 0) and the I = -eps root used by
// d_eps_upper (target = -eps, root sought beyond b*).
double nehari_root_bisect(double q_coeff, double a_coeff, double p,
                          double target);

// Family of unit-amplitude Gaussians exp(-a r^2) with a on a uniform grid;
// amplitude is redundant along rays so members are normalized to b = 1.
struct GaussianFamilySpec {
  double a_min = 0.15;
  double a_max = 3.0;
  int a_count = 40;

  std::vector<double> members() const;
};

struct WellEstimate {
  double d_upper = 0.0;  // min over the family of E(b* w) — an UPPER bound for d
  double minimizing_a = 0.0;  // family coordinate of the minimizer
  double minimizing_b_star = 0.0;
  int family_size = 0;
};

// Upper estimate of the well depth d = inf{E : I = 0, w != 0} over the given
// family, via the Nehari-manifold identity E(b*w) = (p-1) A(b*w) / (2(p+1)).
WellEstimate well_depth_upper(const GaussianFamilySpec& family,
                              const Parameters& params, const GridPtr& grid);

// Same family scan at Nehari level I = -eps (Lemma 3.3's d_eps): for each
// member, E at the root b > b* of I(bw) = -eps; returns the family minimum.
double d_eps_upper(const GaussianFamilySpec& family, const Parameters& params,
                   const GridPtr& grid, double eps);

// Only E <= 0 with I < 0 is provably outside the well (d > 0 by Prop. 3.1);
// labels that compare against a computed d_est are heuristic because d_est
// is an upper bound for d, not d itself.
enum class Classification {
  Zero,
  InWellHeuristic,
  ExteriorHeuristic,
  ExteriorCertified,
  Indeterminate,
};

std::string to_string(Classification c);

// d_est must be positive (take it from well_depth_upper).
Classification classify(const Field& w, const Parameters& params, double d_est);

// Same decision tree but without any well-depth estimate: only Zero and
// ExteriorCertified can be recognized; everything else is Indeterminate.
Classification classify_certified(const Field& w, const Parameters& params);

}  // namespace heatwell
