#pragma once

namespace heatwell {

// Problem parameters for u_t - Δu = |u|^{p-1}u on R^n.
// The analysis requires the open window p_F < p < p_S between the Fujita
// exponent p_F = 1 + 2/n and the Sobolev exponent p_S = (n+2)/(n-2);
// construction rejects anything else.
struct Parameters {
  int n;
  double p;

  Parameters() : Parameters(3, 3.0) {}
  Parameters(int n_, double p_);

  double fujita() const { return 1.0 + 2.0 / n; }
  double sobolev() const { return static_cast<double>(n + 2) / (n - 2); }
};

}  // namespace heatwell
