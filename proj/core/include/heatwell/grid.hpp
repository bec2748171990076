#pragma once

#include <memory>
#include <vector>

namespace heatwell {

// Uniform radial grid on [0, r_max] with num_points intervals, i.e. nodes
// r_i = i*h for i = 0..num_points, h = r_max/num_points.  Radially symmetric
// functions of y in R^n reduce every weighted integral to one dimension, so
// the grid carries the three quadrature weight vectors everything else uses:
//
//   rho_i   = r_i^{n-1} K(r_i)            trapezoid node weights,
//   sigma_i = r_{i+1/2}^{n-1} K(r_{i+1/2}) midpoint (face) weights,
//   mu_i    = K(r_i) * cell-average of r^{n-1} over the dual cell
//
// with K(r) = exp(r^2/4).  sigma and mu define the divergence-form operator
// L_h and its companion inner product (see solver.hpp); mu's exact cell
// average keeps the operator's row scaling consistent with the r^{n-1}
// Jacobian all the way to the axis.
struct RadialGrid {
  double r_max;
  int num_points;  // interval count; node count is num_points + 1
  int n;
  double h;
  std::vector<double> nodes;  // size num_points + 1
  std::vector<double> rho;    // size num_points + 1
  std::vector<double> sigma;  // size num_points
  std::vector<double> mu;     // size num_points + 1

  RadialGrid(double r_max_, int num_points_, int n_);

  int node_count() const { return num_points + 1; }
};

using GridPtr = std::shared_ptr<const RadialGrid>;

GridPtr make_grid(double r_max, int num_points, int n);

// Nodal values of a radially symmetric function w(|y|).  Invariants: one
// value per node, all finite, zero at r_max (truncation Dirichlet condition).
struct Field {
  GridPtr grid;
  std::vector<double> values;
};

// Validating constructor; throws std::invalid_argument on any violated
// invariant.
Field make_field(GridPtr grid, std::vector<double> values);

Field zero_field(GridPtr grid);

// b * exp(-a r^2) sampled on the nodes; the boundary node is forced to zero
// (for admissible a the analytic value there is below double rounding).
Field gaussian_field(GridPtr grid, double a, double b);

// Sum of gaussian_field terms; same boundary handling.
Field gaussian_mixture_field(GridPtr grid, const std::vector<double>& a,
                             const std::vector<double>& b);

// Linear interpolation between nodes; zero for r > r_max.
double sample(const Field& w, double r);

}  // namespace heatwell
