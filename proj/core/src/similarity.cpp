#include "heatwell/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace heatwell {

double time_forward(double t) {
  if (t < 0.0) {
    throw std::invalid_argument("time_forward: t must be >= 0");
  }
  return std::log1p(t);
}

double time_back(double s) {
  if (s < 0.0) {
    throw std::invalid_argument("time_back: s must be >= 0");
  }
  return std::expm1(s);
}

Unrescaled unrescale(const Field& w, double s, const Parameters& params) {
  if (s < 0.0) {
    throw std::invalid_argument("unrescale: s must be >= 0");
  }
  if (s == 0.0) {
    return Unrescaled{0.0, w};
  }
  const double t = std::expm1(s);
  const double amp = std::pow(1.0 + t, -1.0 / (params.p - 1.0));
  const double dilate = std::sqrt(1.0 + t);
  const RadialGrid& g = *w.grid;
  std::vector<double> values(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) {
    values[i] = amp * sample(w, g.nodes[i] / dilate);
  }
  values.back() = 0.0;
  return Unrescaled{t, make_field(w.grid, std::move(values))};
}

Field rescale_forward(const Field& u, double s, const Parameters& params) {
  if (s < 0.0) {
    throw std::invalid_argument("rescale_forward: s must be >= 0");
  }
  if (s == 0.0) {
    return u;
  }
  const double t = std::expm1(s);
  const double amp = std::pow(1.0 + t, 1.0 / (params.p - 1.0));
  const double dilate = std::sqrt(1.0 + t);
  const RadialGrid& g = *u.grid;
  std::vector<double> values(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) {
    values[i] = amp * sample(u, g.nodes[i] * dilate);  // 0 beyond r_max
  }
  values.back() = 0.0;
  return make_field(u.grid, std::move(values));
}

}  // namespace heatwell
