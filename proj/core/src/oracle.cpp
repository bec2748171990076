#include "heatwell/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace heatwell {

namespace {

// Divergence guard: treat anything within 1e-9 of the membership boundary as
// outside the space instead of producing a huge finite number.
constexpr double kMembershipMargin = 1e-9;

}  // namespace

GaussianSpec::GaussianSpec(double a_, double b_, int n_, double p_)
    : a(a_), b(b_), n(n_), p(p_) {
  if (n < 1) {
    throw std::invalid_argument("GaussianSpec: n must be >= 1");
  }
  if (!(p > 1.0)) {
    throw std::invalid_argument("GaussianSpec: p must be > 1");
  }
  if (!(a - 0.125 >= kMembershipMargin)) {
    throw std::domain_error("GaussianSpec: a = " + std::to_string(a) +
                            " not in L^2(K): need a > 1/8");
  }
  if (!((p + 1.0) * a - 0.25 >= kMembershipMargin)) {
    throw std::domain_error("GaussianSpec: a = " + std::to_string(a) +
                            " not in L^{p+1}(K): need (p+1)a > 1/4");
  }
}

GaussianMoments gaussian_moments(const GaussianSpec& spec) {
  // With w = b e^{-a r^2}: w^2 K = b^2 e^{-(2a - 1/4) r^2} and
  // ∫_{R^n} e^{-c|y|^2} dy = (pi/c)^{n/2}; |∇w|^2 = 4a^2 r^2 w^2 picks up the
  // second moment n/(2c) of the same Gaussian.
  const double c2 = 2.0 * spec.a - 0.25;
  const double cp = (spec.p + 1.0) * spec.a - 0.25;
  const double base = std::pow(M_PI / c2, 0.5 * spec.n);
  GaussianMoments m;
  m.l2k_sq = spec.b * spec.b * base;
  m.grad_sq = spec.b * spec.b * (2.0 * spec.a * spec.a * spec.n / c2) * base;
  m.lp1 = std::pow(std::fabs(spec.b), spec.p + 1.0) *
          std::pow(M_PI / cp, 0.5 * spec.n);
  return m;
}

EnergyNehari gaussian_energy_nehari(const GaussianSpec& spec) {
  const GaussianMoments m = gaussian_moments(spec);
  EnergyNehari en;
  en.energy = 0.5 * m.grad_sq - m.l2k_sq / (2.0 * (spec.p - 1.0)) -
              m.lp1 / (spec.p + 1.0);
  en.nehari = m.grad_sq - m.l2k_sq / (spec.p - 1.0) - m.lp1;
  return en;
}

}  // namespace heatwell
