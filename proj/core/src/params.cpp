#include "heatwell/params.hpp"

#include <stdexcept>
#include <string>

namespace heatwell {

Parameters::Parameters(int n_, double p_) : n(n_), p(p_) {
  if (n < 3) {
    throw std::invalid_argument("Parameters: n must be >= 3, got " +
                                std::to_string(n));
  }
  const double pf = 1.0 + 2.0 / n;
  const double ps = static_cast<double>(n + 2) / (n - 2);
  if (!(p > pf) || !(p < ps)) {
    throw std::invalid_argument(
        "Parameters: p must lie in the open window (1+2/n, (n+2)/(n-2)) = (" +
        std::to_string(pf) + ", " + std::to_string(ps) + "), got " +
        std::to_string(p));
  }
}

}  // namespace heatwell
