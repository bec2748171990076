#include "heatwell/weighted_space.hpp"

#include <cmath>
#include <stdexcept>

namespace heatwell {

namespace {

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::runtime_error(std::string(what) +
                             ": non-finite result (integrand grows faster "
                             "than the weight decays)");
  }
}

// |x|^q with an exact-multiplication fast path for integer q (the common
// p + 1 = 4 case dominates the solver's per-step cost).
inline double abs_pow(double x, double q, int q_int) {
  double ax = std::fabs(x);
  if (q_int >= 0) {
    double acc = 1.0;
    double base = ax;
    int k = q_int;
    while (k > 0) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }
  return std::pow(ax, q);
}

inline int integer_exponent(double q) {
  const double r = std::nearbyint(q);
  if (r >= 0.0 && r <= 64.0 && std::fabs(q - r) < 1e-12) {
    return static_cast<int>(r);
  }
  return -1;
}

}  // namespace

double weight_k(double r) {
  if (r < 0.0) {
    throw std::invalid_argument("weight_k: r must be >= 0");
  }
  return std::exp(r * r / 4.0);
}

double sphere_area(int n) {
  if (n < 1) {
    throw std::invalid_argument("sphere_area: n must be >= 1");
  }
  return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
}

double integrate_weighted(const Field& g) {
  const RadialGrid& grid = *g.grid;
  const int m = grid.node_count();
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    acc += g.values[i] * grid.rho[i];
  }
  acc -= 0.5 * (g.values[0] * grid.rho[0] + g.values[m - 1] * grid.rho[m - 1]);
  const double result = sphere_area(grid.n) * grid.h * acc;
  check_finite(result, "integrate_weighted");
  return result;
}

double l2k_norm_sq(const Field& w) {
  const RadialGrid& grid = *w.grid;
  const int m = grid.node_count();
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    acc += w.values[i] * w.values[i] * grid.rho[i];
  }
  acc -= 0.5 * (w.values[0] * w.values[0] * grid.rho[0] +
                w.values[m - 1] * w.values[m - 1] * grid.rho[m - 1]);
  const double result = sphere_area(grid.n) * grid.h * acc;
  check_finite(result, "l2k_norm_sq");
  return result;
}

double grad_l2k_sq(const Field& w) {
  const RadialGrid& grid = *w.grid;
  const int nm = grid.num_points;  // number of midpoints
  const std::vector<double>& v = w.values;
  const double inv = 1.0 / (24.0 * grid.h);
  double acc = 0.0;
  // Fourth-order staggered derivative at interval midpoints.  The axis
  // closure uses the even reflection w(-r) = w(r); the last interval uses the
  // one-sided companion stencil (its weight there is negligible for decaying
  // data but keeps the quadrature well-defined).
  {
    const double d = (28.0 * v[1] - 27.0 * v[0] - v[2]) * inv;
    acc += grid.sigma[0] * d * d;
  }
  for (int i = 1; i + 1 < nm; ++i) {
    const double d = (27.0 * (v[i + 1] - v[i]) - (v[i + 2] - v[i - 1])) * inv;
    acc += grid.sigma[i] * d * d;
  }
  if (nm >= 2) {
    const double d =
        (v[nm - 3] - 3.0 * v[nm - 2] - 21.0 * v[nm - 1] + 23.0 * v[nm]) * inv;
    acc += grid.sigma[nm - 1] * d * d;
  }
  const double result = sphere_area(grid.n) * grid.h * acc;
  check_finite(result, "grad_l2k_sq");
  return result;
}

double lp1k_norm(const Field& w, const Parameters& params) {
  const RadialGrid& grid = *w.grid;
  const int m = grid.node_count();
  const double q = params.p + 1.0;
  const int q_int = integer_exponent(q);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    acc += abs_pow(w.values[i], q, q_int) * grid.rho[i];
  }
  acc -= 0.5 * (abs_pow(w.values[0], q, q_int) * grid.rho[0] +
                abs_pow(w.values[m - 1], q, q_int) * grid.rho[m - 1]);
  const double result = sphere_area(grid.n) * grid.h * acc;
  check_finite(result, "lp1k_norm");
  return result;
}

double h1k_norm_sq(const Field& w) { return l2k_norm_sq(w) + grad_l2k_sq(w); }

double kavian_ratio(const Field& w) {
  const double den = l2k_norm_sq(w);
  if (den == 0.0) {
    throw std::domain_error("kavian_ratio: zero field");
  }
  return grad_l2k_sq(w) / den;
}

double sup_norm(const Field& w) {
  double m = 0.0;
  for (double v : w.values) {
    m = std::max(m, std::fabs(v));
  }
  return m;
}

double discrete_dot_k(const Field& f, const Field& g) {
  if (f.grid != g.grid) {
    throw std::invalid_argument("discrete_dot_k: fields on different grids");
  }
  const RadialGrid& grid = *f.grid;
  double acc = 0.0;
  for (int i = 0; i < grid.node_count(); ++i) {
    acc += grid.mu[i] * f.values[i] * g.values[i];
  }
  return sphere_area(grid.n) * grid.h * acc;
}

}  // namespace heatwell
