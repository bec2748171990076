#pragma once

#include "heatwell/grid.hpp"
#include "heatwell/params.hpp"

namespace heatwell {

// s = log(1+t); strictly increasing, s(0) = 0.
double time_forward(double t);

// t = e^s - 1, the inverse map; a similarity blow-up time T_s corresponds to
// T = e^{T_s} - 1 in the original clock.
double time_back(double s);

struct Unrescaled {
  double t;
  Field u;
};

// Inverts w(y,s) = e^{s/(p-1)} u(e^{s/2} y, e^s - 1):
//   u(x, t) = (1+t)^{-1/(p-1)} w(x/sqrt(1+t)),  t = e^s - 1,
// resampled on the same radial grid by linear interpolation.  At s = 0 the
// map is the identity and is returned without resampling.  The boundary node
// is forced to zero to keep the Field invariant; the dropped value is
// O(w(r_max/sqrt(1+t))), super-exponentially small for well-decaying data.
Unrescaled unrescale(const Field& w, double s, const Parameters& params);

// Forward change of variables w(y) = (1+t)^{1/(p-1)} u(y sqrt(1+t)) applied
// to a profile u given at time t = e^s - 1; values needing u beyond r_max
// are zero (truncation).  Composes with unrescale up to interpolation error.
Field rescale_forward(const Field& u, double s, const Parameters& params);

}  // namespace heatwell
