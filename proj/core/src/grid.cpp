#include "heatwell/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace heatwell {

namespace {

double weight(double r) { return std::exp(r * r / 4.0); }

// r^{n-1} averaged over [lo, hi]: (hi^n - lo^n) / (n (hi - lo)).
double radial_cell_avg(double lo, double hi, int n) {
  return (std::pow(hi, n) - std::pow(lo, n)) / (n * (hi - lo));
}

}  // namespace

RadialGrid::RadialGrid(double r_max_, int num_points_, int n_)
    : r_max(r_max_), num_points(num_points_), n(n_) {
  if (!(r_max > 0.0)) {
    throw std::invalid_argument("RadialGrid: r_max must be positive");
  }
  if (r_max > 40.0) {
    throw std::invalid_argument(
        "RadialGrid: r_max must be <= 40 to keep exp(r^2/4) finite");
  }
  if (num_points < 16) {
    throw std::invalid_argument("RadialGrid: num_points must be >= 16, got " +
                                std::to_string(num_points));
  }
  if (n < 1) {
    throw std::invalid_argument("RadialGrid: n must be >= 1");
  }
  h = r_max / num_points;
  const int m = num_points + 1;
  nodes.resize(m);
  rho.resize(m);
  mu.resize(m);
  sigma.resize(num_points);
  for (int i = 0; i < m; ++i) {
    const double r = i * h;
    nodes[i] = r;
    rho[i] = std::pow(r, n - 1) * weight(r);
  }
  for (int i = 0; i < num_points; ++i) {
    const double rm = (i + 0.5) * h;
    sigma[i] = std::pow(rm, n - 1) * weight(rm);
  }
  // Dual cells: [0, h/2] for the axis node (weight taken at the cell face to
  // stay consistent with sigma_0), [r_i - h/2, r_i + h/2] inside, and the
  // half cell [r_max - h/2, r_max] at the boundary.
  mu[0] = weight(0.5 * h) * radial_cell_avg(0.0, 0.5 * h, n) * 0.5;
  for (int i = 1; i < num_points; ++i) {
    mu[i] = weight(nodes[i]) *
            radial_cell_avg(nodes[i] - 0.5 * h, nodes[i] + 0.5 * h, n);
  }
  mu[num_points] =
      weight(r_max) * radial_cell_avg(r_max - 0.5 * h, r_max, n) * 0.5;
}

GridPtr make_grid(double r_max, int num_points, int n) {
  return std::make_shared<const RadialGrid>(r_max, num_points, n);
}

Field make_field(GridPtr grid, std::vector<double> values) {
  if (!grid) {
    throw std::invalid_argument("Field: null grid");
  }
  if (static_cast<int>(values.size()) != grid->node_count()) {
    throw std::invalid_argument(
        "Field: values length " + std::to_string(values.size()) +
        " does not match node count " + std::to_string(grid->node_count()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Field: values must all be finite");
    }
  }
  if (values.back() != 0.0) {
    throw std::invalid_argument(
        "Field: value at r_max must be 0 (truncation boundary condition)");
  }
  return Field{std::move(grid), std::move(values)};
}

Field zero_field(GridPtr grid) {
  if (!grid) {
    throw std::invalid_argument("Field: null grid");
  }
  std::vector<double> values(grid->node_count(), 0.0);
  return Field{std::move(grid), std::move(values)};
}

Field gaussian_field(GridPtr grid, double a, double b) {
  return gaussian_mixture_field(std::move(grid), {a}, {b});
}

Field gaussian_mixture_field(GridPtr grid, const std::vector<double>& a,
                             const std::vector<double>& b) {
  if (!grid) {
    throw std::invalid_argument("Field: null grid");
  }
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument(
        "gaussian_mixture_field: need matching nonempty a/b lists");
  }
  std::vector<double> values(grid->node_count(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int i = 0; i < grid->node_count(); ++i) {
      const double r = grid->nodes[i];
      values[i] += b[k] * std::exp(-a[k] * r * r);
    }
  }
  values.back() = 0.0;
  return make_field(std::move(grid), std::move(values));
}

double sample(const Field& w, double r) {
  const RadialGrid& g = *w.grid;
  if (r < 0.0) {
    throw std::invalid_argument("sample: r must be >= 0");
  }
  if (r >= g.r_max) {
    return 0.0;
  }
  const double x = r / g.h;
  int i = static_cast<int>(x);
  if (i >= g.num_points) {
    i = g.num_points - 1;
  }
  const double frac = x - i;
  return w.values[i] + frac * (w.values[i + 1] - w.values[i]);
}

}  // namespace heatwell
