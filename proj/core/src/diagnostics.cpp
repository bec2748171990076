#include "heatwell/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

namespace heatwell {

std::vector<double> energy_ledger(const SimulationTrace& trace) {
  if (trace.rows.empty()) {
    throw std::invalid_argument("energy_ledger: empty trace");
  }
  const double e0 = trace.rows.front().energy;
  std::vector<double> res;
  res.reserve(trace.rows.size());
  for (const TraceRow& row : trace.rows) {
    res.push_back(std::fabs(e0 - row.energy - row.dissipation_accum));
  }
  return res;
}

void m_functionals(SimulationTrace& trace) {
  if (trace.rows.empty()) {
    throw std::invalid_argument("m_functionals: empty trace");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < trace.rows.size(); ++k) {
    TraceRow& row = trace.rows[k];
    row.m_prime = 0.5 * row.l2k_sq;
    row.m_double_prime = -row.nehari;
    if (k > 0) {
      const TraceRow& prev = trace.rows[k - 1];
      m += 0.5 * (row.m_prime + prev.m_prime) * (row.s - prev.s);
    }
    row.m = m;
  }
}

MPrimeConsistency m_prime_consistency(const SimulationTrace& trace,
                                      double sup_cap) {
  MPrimeConsistency out;
  const auto& rows = trace.rows;
  // Trajectory scale: the residual of the difference quotient against the
  // midpoint value of -I is bounded by dt * |dI/ds| up to a constant, so
  // normalize by the largest observed slope (floored at 1).
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].sup_norm > sup_cap || rows[k - 1].sup_norm > sup_cap) continue;
    const double ds = rows[k].s - rows[k - 1].s;
    if (ds <= 0.0) continue;
    out.scale = std::max(
        out.scale, std::fabs(rows[k].nehari - rows[k - 1].nehari) / ds);
  }
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].sup_norm > sup_cap || rows[k - 1].sup_norm > sup_cap) continue;
    const double ds = rows[k].s - rows[k - 1].s;
    if (ds <= 0.0) continue;
    const double mp_prev = 0.5 * rows[k - 1].l2k_sq;
    const double mp_cur = 0.5 * rows[k].l2k_sq;
    const double i_mid = 0.5 * (rows[k].nehari + rows[k - 1].nehari);
    const double resid = std::fabs((mp_cur - mp_prev) / ds + i_mid);
    out.max_residual = std::max(out.max_residual, resid);
    out.max_ratio = std::max(out.max_ratio, resid / (ds * out.scale));
    ++out.pairs_checked;
  }
  return out;
}

InvarianceReport invariance_monitor(const SimulationTrace& trace) {
  InvarianceReport rep;
  if (trace.rows.empty()) {
    return rep;
  }
  const auto sign = [](double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); };
  rep.initial_sign = sign(trace.rows.front().nehari);
  if (rep.initial_sign == 0) {
    return rep;  // zero datum: nothing to flip
  }
  for (const TraceRow& row : trace.rows) {
    if (sign(row.nehari) == -rep.initial_sign) {
      rep.flipped = true;
      rep.first_flip_s = row.s;
      break;
    }
  }
  return rep;
}

std::optional<double> detect_s_prime(const SimulationTrace& trace) {
  if (trace.rows.empty()) {
    return std::nullopt;
  }
  const double n = trace.params.n;
  const double p = trace.params.p;
  const double coeff = (n * (p - 1.0) - 2.0) / 4.0;
  const double rhs = (p + 1.0) * trace.rows.front().energy;
  for (const TraceRow& row : trace.rows) {
    if (coeff * row.l2k_sq > rhs) {
      return row.s;
    }
  }
  return std::nullopt;
}

double epsilon1(const SimulationTrace& trace, double d_est) {
  if (trace.rows.empty()) {
    throw std::invalid_argument("epsilon1: empty trace");
  }
  const TraceRow& r0 = trace.rows.front();
  const double e1 = std::min(-r0.nehari, d_est - r0.energy);
  return e1 > 0.0 ? e1 : 0.0;
}

ConcavityCheck cauchy_schwarz_surrogate(const SimulationTrace& trace) {
  ConcavityCheck out;
  const auto sp = detect_s_prime(trace);
  if (!sp.has_value()) {
    return out;
  }
  out.applicable = true;
  out.s_prime = *sp;
  const double p = trace.params.p;
  const double mp0 = trace.rows.empty() ? 0.0 : 0.5 * trace.rows.front().l2k_sq;
  bool first = true;
  for (const TraceRow& row : trace.rows) {
    if (row.s < *sp) continue;
    const double lhs = row.m * row.m_double_prime;
    const double rhs =
        0.5 * (p + 1.0) * (row.m_prime - mp0) * (row.m_prime - mp0);
    const double slack = lhs - rhs;
    const double rel = slack / std::max(1.0, rhs);
    if (first || slack < out.min_slack) out.min_slack = slack;
    if (first || rel < out.min_slack_rel) out.min_slack_rel = rel;
    first = false;
    ++out.rows_checked;
  }
  return out;
}

RunOutcome verdict(const SimulationTrace& trace) {
  RunOutcome out = trace.outcome;
  out.max_h1k_sq = 0.0;
  out.max_sup_norm = 0.0;
  for (const TraceRow& row : trace.rows) {
    out.max_h1k_sq = std::max(out.max_h1k_sq, row.h1k_sq);
    out.max_sup_norm = std::max(out.max_sup_norm, row.sup_norm);
  }
  if (out.has_blowup) {
    out.ts_mid = 0.5 * (out.ts_lo + out.ts_hi);
    out.t_blowup = std::expm1(out.ts_mid);
  }
  return out;
}

}  // namespace heatwell
