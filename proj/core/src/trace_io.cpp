#include "heatwell/trace_io.hpp"

#include <cstdio>
#include <stdexcept>

namespace heatwell {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace,
                     const std::vector<double>& residuals) {
  if (residuals.size() != trace.rows.size()) {
    throw std::invalid_argument(
        "write_trace_csv: residuals/rows length mismatch");
  }
  out << "s,t,dt,E,I,l2k_sq,h1k_sq,sup_norm,M,M_prime,M_double_prime,"
         "dissipation_accum,energy_residual\n";
  for (std::size_t k = 0; k < trace.rows.size(); ++k) {
    const TraceRow& r = trace.rows[k];
    out << fmt17(r.s) << ',' << fmt17(r.t) << ',' << fmt17(r.dt) << ','
        << fmt17(r.energy) << ',' << fmt17(r.nehari) << ',' << fmt17(r.l2k_sq)
        << ',' << fmt17(r.h1k_sq) << ',' << fmt17(r.sup_norm) << ','
        << fmt17(r.m) << ',' << fmt17(r.m_prime) << ','
        << fmt17(r.m_double_prime) << ',' << fmt17(r.dissipation_accum) << ','
        << fmt17(residuals[k]) << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "a,b,E0,I0,classification,verdict,T_s_mid,max_h1k,status\n";
  for (const SweepRow& r : rows) {
    out << fmt17(r.a) << ',' << fmt17(r.b) << ',' << fmt17(r.e0) << ','
        << fmt17(r.i0) << ',' << r.classification << ',' << r.verdict << ',';
    if (r.ts_mid.has_value()) {
      out << fmt17(*r.ts_mid);
    }
    out << ',' << fmt17(r.max_h1k) << ',' << r.status << '\n';
  }
}

}  // namespace heatwell
