#include "heatwell/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "heatwell/weighted_space.hpp"

namespace heatwell {

FunctionalReport report(const Field& w, const Parameters& params) {
  FunctionalReport r;
  r.l2k_sq = l2k_norm_sq(w);
  r.grad_sq = grad_l2k_sq(w);
  r.lp1 = lp1k_norm(w, params);
  r.energy = 0.5 * r.grad_sq - r.l2k_sq / (2.0 * (params.p - 1.0)) -
             r.lp1 / (params.p + 1.0);
  r.nehari = r.grad_sq - r.l2k_sq / (params.p - 1.0) - r.lp1;
  r.sup_norm = sup_norm(w);
  return r;
}

NehariScaling nehari_scaling(const Field& w, const Parameters& params) {
  const FunctionalReport r = report(w, params);
  if (r.sup_norm == 0.0) {
    throw std::domain_error("nehari_scaling: zero field");
  }
  const double q = r.grad_sq - r.l2k_sq / (params.p - 1.0);
  if (!(q > 0.0)) {
    // Analytically impossible for admissible fields (Lemma 2.1(iii) with
    // p > 1 + 2/n); reaching this indicates a quadrature or decay violation.
    throw std::domain_error(
        "nehari_scaling: Q <= 0 (quadrature/decay violation)");
  }
  if (!(r.lp1 > 0.0)) {
    throw std::domain_error("nehari_scaling: A = 0 for nonzero field");
  }
  NehariScaling s;
  s.q_coeff = q;
  s.a_coeff = r.lp1;
  s.b_star = std::pow(q / r.lp1, 1.0 / (params.p - 1.0));
  return s;
}

std::vector<RayPoint> energy_on_ray(const Field& w, const Parameters& params,
                                    const std::vector<double>& b_values) {
  const NehariScaling s = nehari_scaling(w, params);
  std::vector<RayPoint> out;
  out.reserve(b_values.size());
  for (double b : b_values) {
    const double bp = std::pow(std::fabs(b), params.p + 1.0);
    RayPoint pt;
    pt.b = b;
    pt.energy = 0.5 * b * b * s.q_coeff - bp * s.a_coeff / (params.p + 1.0);
    pt.nehari = b * b * s.q_coeff - bp * s.a_coeff;
    out.push_back(pt);
  }
  return out;
}

double nehari_root_bisect(double q_coeff, double a_coeff, double p,
                          double target) {
  if (!(q_coeff > 0.0) || !(a_coeff > 0.0)) {
    throw std::invalid_argument("nehari_root_bisect: need Q > 0 and A > 0");
  }
  if (target > 0.0) {
    throw std::invalid_argument("nehari_root_bisect: target must be <= 0");
  }
  const auto f = [&](double b) {
    return b * b * q_coeff - std::pow(b, p + 1.0) * a_coeff - target;
  };
  // f > 0 for small b (the b^2 term wins), f -> -inf for large b; the root
  // sought is the unique crossing beyond the maximum of I(bw), so doubling
  // the upper end must find a sign change.
  double hi = 1.0;
  int doublings = 0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (++doublings > 60) {
      throw std::runtime_error(
          "nehari_root_bisect: no sign change after 60 doublings");
    }
  }
  double lo = std::ldexp(1.0, -60);
  if (f(lo) <= 0.0) {
    throw std::runtime_error("nehari_root_bisect: lower bracket not positive");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * std::max(1.0, hi) && it >= 60) {
      break;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> GaussianFamilySpec::members() const {
  if (a_count < 1) {
    throw std::invalid_argument("GaussianFamilySpec: a_count must be >= 1");
  }
  if (!(a_min > 0.125)) {
    throw std::invalid_argument(
        "GaussianFamilySpec: a_min must exceed 1/8 (L^2(K) membership)");
  }
  if (!(a_max >= a_min)) {
    throw std::invalid_argument("GaussianFamilySpec: need a_max >= a_min");
  }
  std::vector<double> a(a_count);
  if (a_count == 1) {
    a[0] = a_min;
    return a;
  }
  const double da = (a_max - a_min) / (a_count - 1);
  for (int k = 0; k < a_count; ++k) {
    a[k] = a_min + k * da;
  }
  return a;
}

WellEstimate well_depth_upper(const GaussianFamilySpec& family,
                              const Parameters& params, const GridPtr& grid) {
  const std::vector<double> members = family.members();
  WellEstimate best;
  best.d_upper = 0.0;
  best.family_size = static_cast<int>(members.size());
  bool first = true;
  for (double a : members) {
    const Field w = gaussian_field(grid, a, 1.0);
    const NehariScaling s = nehari_scaling(w, params);
    // On the Nehari manifold E = (p-1) A / (2(p+1)) with A evaluated at b*w.
    const double a_star =
        std::pow(s.b_star, params.p + 1.0) * s.a_coeff;
    const double e_star =
        (params.p - 1.0) / (2.0 * (params.p + 1.0)) * a_star;
    if (first || e_star < best.d_upper) {
      best.d_upper = e_star;
      best.minimizing_a = a;
      best.minimizing_b_star = s.b_star;
      first = false;
    }
  }
  return best;
}

double d_eps_upper(const GaussianFamilySpec& family, const Parameters& params,
                   const GridPtr& grid, double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("d_eps_upper: eps must be > 0");
  }
  const std::vector<double> members = family.members();
  double best = 0.0;
  bool first = true;
  for (double a : members) {
    const Field w = gaussian_field(grid, a, 1.0);
    const NehariScaling s = nehari_scaling(w, params);
    const double b = nehari_root_bisect(s.q_coeff, s.a_coeff, params.p, -eps);
    const double e = 0.5 * b * b * s.q_coeff -
                     std::pow(b, params.p + 1.0) * s.a_coeff / (params.p + 1.0);
    if (first || e < best) {
      best = e;
      first = false;
    }
  }
  return best;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Zero:
      return "Zero";
    case Classification::InWellHeuristic:
      return "InWellHeuristic";
    case Classification::ExteriorHeuristic:
      return "ExteriorHeuristic";
    case Classification::ExteriorCertified:
      return "ExteriorCertified";
    case Classification::Indeterminate:
      return "Indeterminate";
  }
  return "Indeterminate";
}

namespace {

Classification classify_impl(const Field& w, const Parameters& params,
                             double d_est, bool have_d) {
  if (sup_norm(w) == 0.0) {
    return Classification::Zero;
  }
  const FunctionalReport r = report(w, params);
  if (r.energy <= 0.0 && r.nehari < 0.0) {
    return Classification::ExteriorCertified;
  }
  if (have_d) {
    if (r.energy > 0.0 && r.energy < d_est && r.nehari > 0.0) {
      return Classification::InWellHeuristic;
    }
    if (r.energy < d_est && r.nehari < 0.0) {
      return Classification::ExteriorHeuristic;
    }
  }
  return Classification::Indeterminate;
}

}  // namespace

Classification classify(const Field& w, const Parameters& params,
                        double d_est) {
  if (!(d_est > 0.0)) {
    throw std::invalid_argument("classify: d_est must be positive");
  }
  return classify_impl(w, params, d_est, true);
}

Classification classify_certified(const Field& w, const Parameters& params) {
  return classify_impl(w, params, 0.0, false);
}

}  // namespace heatwell
