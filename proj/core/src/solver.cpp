#include "heatwell/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatwell/functionals.hpp"
#include "heatwell/weighted_space.hpp"

namespace heatwell {

void SolverConfig::validate() const {
  if (!(dt_min > 0.0) || !(dt_init >= dt_min)) {
    throw std::invalid_argument(
        "SolverConfig: need 0 < dt_min <= dt_init, got dt_min = " +
        std::to_string(dt_min) + ", dt_init = " + std::to_string(dt_init));
  }
  if (!(s_max > 0.0)) {
    throw std::invalid_argument("SolverConfig: s_max must be > 0");
  }
  if (!(blowup_threshold > 1.0)) {
    throw std::invalid_argument("SolverConfig: blowup_threshold must be > 1");
  }
  if (!(growth_cap > 1.0)) {
    throw std::invalid_argument("SolverConfig: growth_cap must be > 1");
  }
  if (record_every < 1) {
    throw std::invalid_argument("SolverConfig: record_every must be >= 1");
  }
}

Field apply_l(const Field& w) {
  const RadialGrid& g = *w.grid;
  const int nn = g.num_points;
  const double inv_h2 = 1.0 / (g.h * g.h);
  const std::vector<double>& v = w.values;
  std::vector<double> out(nn + 1);
  out[0] = g.sigma[0] * (v[0] - v[1]) * inv_h2 / g.mu[0];
  for (int i = 1; i < nn; ++i) {
    out[i] = -(g.sigma[i] * (v[i + 1] - v[i]) -
               g.sigma[i - 1] * (v[i] - v[i - 1])) *
             inv_h2 / g.mu[i];
  }
  out[nn] = 0.0;
  return Field{w.grid, std::move(out)};
}

namespace {

// Prefactored tridiagonal solve for (Id + dt L_h); reused across steps while
// dt stays constant.  No pivoting: the matrix is strictly diagonally
// dominant for every dt > 0.
struct ImplicitFactor {
  double dt = -1.0;
  std::vector<double> lo, cp, inv_diag, scratch;

  void build(const RadialGrid& g, double dt_) {
    dt = dt_;
    const int nn = g.num_points;
    const double r = dt * 1.0 / (g.h * g.h);
    lo.assign(nn + 1, 0.0);
    cp.assign(nn + 1, 0.0);
    inv_diag.assign(nn + 1, 0.0);
    scratch.resize(nn + 1);
    double diag0 = 1.0 + r * g.sigma[0] / g.mu[0];
    double up0 = -r * g.sigma[0] / g.mu[0];
    inv_diag[0] = 1.0 / diag0;
    cp[0] = up0 * inv_diag[0];
    for (int i = 1; i < nn; ++i) {
      lo[i] = -r * g.sigma[i - 1] / g.mu[i];
      const double diag = 1.0 + r * (g.sigma[i - 1] + g.sigma[i]) / g.mu[i];
      const double up = -r * g.sigma[i] / g.mu[i];
      const double denom = diag - lo[i] * cp[i - 1];
      inv_diag[i] = 1.0 / denom;
      cp[i] = up * inv_diag[i];
    }
    lo[nn] = 0.0;  // Dirichlet row: x_nn = rhs_nn
    inv_diag[nn] = 1.0;
    cp[nn] = 0.0;
  }

  void solve(const std::vector<double>& rhs, std::vector<double>& x) {
    const int m = static_cast<int>(rhs.size());
    scratch[0] = rhs[0] * inv_diag[0];
    for (int i = 1; i < m; ++i) {
      scratch[i] = (rhs[i] - lo[i] * scratch[i - 1]) * inv_diag[i];
    }
    x.resize(m);
    x[m - 1] = scratch[m - 1];
    for (int i = m - 2; i >= 0; --i) {
      x[i] = scratch[i] - cp[i] * x[i + 1];
    }
  }
};

inline double nonlinear_rhs(double v, double p, int pm1_int) {
  double av = std::fabs(v);
  double amp;
  if (pm1_int >= 0) {
    amp = 1.0;
    double base = av;
    int k = pm1_int;
    while (k > 0) {
      if (k & 1) amp *= base;
      base *= base;
      k >>= 1;
    }
  } else {
    amp = std::pow(av, p - 1.0);
  }
  return amp * v;
}

inline int integer_exponent(double q) {
  const double r = std::nearbyint(q);
  if (r >= 0.0 && r <= 64.0 && std::fabs(q - r) < 1e-12) {
    return static_cast<int>(r);
  }
  return -1;
}

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    m = std::max(m, std::fabs(x));
  }
  return m;
}

}  // namespace

Field step_linear(const Field& w, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step_linear: dt must be > 0");
  }
  ImplicitFactor factor;
  factor.build(*w.grid, dt);
  std::vector<double> rhs = w.values;
  rhs.back() = 0.0;
  std::vector<double> out;
  factor.solve(rhs, out);
  return Field{w.grid, std::move(out)};
}

std::optional<Field> step(const Field& w, double dt, const Parameters& params) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step: dt must be > 0");
  }
  const int pm1 = integer_exponent(params.p - 1.0);
  const double src = 1.0 / (params.p - 1.0);
  std::vector<double> rhs(w.values.size());
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    const double v = w.values[i];
    rhs[i] = v + dt * (nonlinear_rhs(v, params.p, pm1) + src * v);
  }
  rhs.back() = 0.0;
  if (!all_finite(rhs)) {
    return std::nullopt;
  }
  ImplicitFactor factor;
  factor.build(*w.grid, dt);
  std::vector<double> out;
  factor.solve(rhs, out);
  if (!all_finite(out)) {
    return std::nullopt;
  }
  return Field{w.grid, std::move(out)};
}

SimulationTrace evolve(const Field& u0, const Parameters& params,
                       const SolverConfig& config, double d_est) {
  config.validate();
  if (u0.grid->n != params.n) {
    throw std::invalid_argument(
        "evolve: grid dimension does not match params.n");
  }

  SimulationTrace trace;
  trace.params = params;
  RunOutcome& out = trace.outcome;
  out.classification = d_est > 0.0 ? classify(u0, params, d_est)
                                   : classify_certified(u0, params);

  const RadialGrid& g = *u0.grid;
  const int pm1 = integer_exponent(params.p - 1.0);
  const double src = 1.0 / (params.p - 1.0);
  const double dot_scale = sphere_area(g.n) * g.h;

  Field cur{u0.grid, u0.values};
  cur.values.back() = 0.0;

  double s = 0.0;
  double dt = config.dt_init;
  double dissipation = 0.0;
  double sup_prev = max_abs(cur.values);
  bool last_motion_growth = false;
  int calm = 0;
  long accepted = 0;
  long last_recorded = -1;
  double last_dtc = 0.0;

  const auto record = [&](double dt_used) {
    const FunctionalReport r = report(cur, params);
    TraceRow row;
    row.s = s;
    row.t = std::expm1(s);
    row.dt = dt_used;
    row.energy = r.energy;
    row.nehari = r.nehari;
    row.l2k_sq = r.l2k_sq;
    row.sup_norm = r.sup_norm;
    row.h1k_sq = r.l2k_sq + r.grad_sq;
    row.dissipation_accum = dissipation;
    trace.rows.push_back(row);
    last_recorded = accepted;
    out.max_h1k_sq = std::max(out.max_h1k_sq, row.h1k_sq);
    out.max_sup_norm = std::max(out.max_sup_norm, row.sup_norm);
  };

  record(0.0);

  std::vector<double> rhs(g.node_count());
  std::vector<double> next;
  ImplicitFactor factor;

  const double horizon_tol = 1e-12 * std::max(1.0, config.s_max);
  std::string stop_reason;
  bool stopped = false;

  while (config.s_max - s > horizon_tol) {
    const double dtc = std::min(dt, config.s_max - s);

    bool ok = true;
    for (int i = 0; i < g.node_count(); ++i) {
      const double v = cur.values[i];
      const double r = v + dtc * (nonlinear_rhs(v, params.p, pm1) + src * v);
      rhs[i] = r;
      if (!std::isfinite(r)) ok = false;
    }
    rhs.back() = 0.0;

    double sup_new = 0.0;
    if (ok) {
      if (factor.dt != dtc) {
        factor.build(g, dtc);
      }
      factor.solve(rhs, next);
      if (!all_finite(next)) {
        ok = false;
      } else {
        sup_new = max_abs(next);
        if (sup_prev > 0.0 && sup_new > config.growth_cap * sup_prev) {
          ok = false;
          last_motion_growth = true;  // finite step, sup-norm ratcheting up
        }
      }
    }

    if (!ok) {
      if (0.5 * dt < config.dt_min) {
        if (last_motion_growth) {
          out.verdict = Verdict::BlowUp;
          out.has_blowup = true;
          out.ts_lo = s;
          out.ts_hi = s + dtc;
        } else {
          out.verdict = Verdict::Inconclusive;
          out.reason =
              "step size underflowed dt_min without sup-norm growth";
        }
        stopped = true;
        break;
      }
      dt *= 0.5;
      calm = 0;
      continue;
    }

    // Accepted: accumulate the dissipation integral with the per-step
    // difference quotient ||w_new - w||^2 / dt in the cell-measure product.
    double diff_sq = 0.0;
    for (int i = 0; i < g.node_count(); ++i) {
      const double d = next[i] - cur.values[i];
      diff_sq += g.mu[i] * d * d;
    }
    dissipation += dot_scale * diff_sq / dtc;

    const double prev_s = s;
    cur.values.swap(next);
    s = prev_s + dtc;
    ++accepted;
    last_dtc = dtc;
    last_motion_growth = sup_new > sup_prev;
    sup_prev = sup_new;

    const bool crossed = sup_new > config.blowup_threshold;
    if (accepted % config.record_every == 0 || crossed) {
      record(dtc);
    }

    if (crossed) {
      out.verdict = Verdict::BlowUp;
      out.has_blowup = true;
      out.ts_lo = prev_s;
      out.ts_hi = s;
      stopped = true;
      break;
    }

    ++calm;
    if (calm >= 20 && dt < config.dt_init) {
      dt = std::min(2.0 * dt, config.dt_init);
      calm = 0;
    }
  }

  if (last_recorded != accepted) {
    record(last_dtc);  // make sure the final accepted state is in the trace
  }

  if (!stopped) {
    // Horizon reached; norms stayed below the blow-up threshold or we would
    // have exited earlier.
    if (std::isfinite(out.max_h1k_sq) && std::isfinite(out.max_sup_norm)) {
      out.verdict = Verdict::Global;
    } else {
      out.verdict = Verdict::Inconclusive;
      out.reason = "non-finite norms at the horizon";
    }
  }

  if (out.has_blowup) {
    out.ts_mid = 0.5 * (out.ts_lo + out.ts_hi);
    out.t_blowup = std::expm1(out.ts_mid);
  }
  return trace;
}

}  // namespace heatwell
