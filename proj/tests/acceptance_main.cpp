// Acceptance gate: one line per criterion, nonzero exit iff any fails.
// Criteria are property-based at desk scale; frozen reference digits come
// from independent 40-digit quadrature of the defining integrals.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heatwell/diagnostics.hpp"
#include "heatwell/functionals.hpp"
#include "heatwell/oracle.hpp"
#include "heatwell/rng.hpp"
#include "heatwell/similarity.hpp"
#include "heatwell/solver.hpp"
#include "heatwell/weighted_space.hpp"

using namespace heatwell;
namespace fs = std::filesystem;

namespace {

const Parameters kP33(3, 3.0);
constexpr double kDFrozen = 15.7318276944559812;  // continuum family min

struct Ctx {
  GridPtr grid;  // production grid: r_max 16, N 4096, n 3
  double d_est = 0.0;
  std::optional<SimulationTrace> w_run;    // b = 0.5, global
  std::optional<SimulationTrace> z_run_a;  // b = 3.5, dt_min 1e-8
  std::optional<SimulationTrace> z_run_b;  // b = 3.5, dt_min 1e-10
};

Field random_mixture(const GridPtr& grid, std::mt19937_64& gen, double a_lo,
                     double a_hi) {
  std::vector<double> a(3), b(3);
  for (int k = 0; k < 3; ++k) {
    a[k] = uniform(gen, a_lo, a_hi);
    b[k] = uniform(gen, -1.0, 1.0);
  }
  b[0] = uniform(gen, 0.5, 1.5);
  return gaussian_mixture_field(grid, a, b);
}

Field random_field(const GridPtr& grid, std::mt19937_64& gen) {
  std::vector<double> v(grid->node_count());
  for (int i = 0; i + 1 < grid->node_count(); ++i) {
    v[i] = uniform(gen, -1.0, 1.0);
  }
  v.back() = 0.0;
  return make_field(grid, std::move(v));
}

// r_max = 16 so the clamped boundary node's kink stays far below the O(h^2)
// interior truncation error at these resolutions.
double eig_residual(int num_points) {
  const GridPtr g = make_grid(16.0, num_points, 3);
  const Field w = gaussian_field(g, 0.25, 1.0);
  const Field lw = apply_l(w);
  std::vector<double> d(g->node_count());
  for (int i = 0; i < g->node_count(); ++i) {
    d[i] = lw.values[i] - 1.5 * w.values[i];
  }
  const Field df{g, std::move(d)};
  return std::sqrt(discrete_dot_k(df, df) / discrete_dot_k(w, w));
}

// --- criterion 1: oracle vs quadrature at the three pinned points ---------
bool criterion_oracle(Ctx&, std::ostream& out) {
  const GaussianSpec specs[] = {
      {0.25, 1.0, 3, 3.0}, {0.5, 1.0, 3, 3.0}, {1.0, 2.0, 3, 2.5}};
  double worst = 0.0;
  for (const GaussianSpec& spec : specs) {
    const GridPtr g = make_grid(16.0, 4096, spec.n);
    const Field w = gaussian_field(g, spec.a, spec.b);
    const GaussianMoments m = gaussian_moments(spec);
    worst = std::max(worst, std::fabs(l2k_norm_sq(w) - m.l2k_sq) / m.l2k_sq);
    worst = std::max(worst, std::fabs(grad_l2k_sq(w) - m.grad_sq) / m.grad_sq);
    worst = std::max(
        worst,
        std::fabs(lp1k_norm(w, Parameters(spec.n, spec.p)) - m.lp1) / m.lp1);
  }
  out << "max rel error " << worst << " (bound 1e-6)";
  return worst <= 1e-6;
}

// --- criterion 2: Kavian equality case and mixture lower bound ------------
bool criterion_kavian(Ctx&, std::ostream& out) {
  double worst_eq = 0.0;
  double worst_margin = 1e300;
  std::mt19937_64 gen(20240817u);
  for (int n : {3, 4}) {
    const GridPtr g = make_grid(16.0, 4096, n);
    worst_eq = std::max(
        worst_eq,
        std::fabs(kavian_ratio(gaussian_field(g, 0.25, 1.0)) - 0.5 * n));
    for (int trial = 0; trial < 100; ++trial) {
      const Field w = random_mixture(g, gen, 0.2, 3.0);
      worst_margin = std::min(worst_margin, kavian_ratio(w) - 0.5 * n);
    }
  }
  out << "equality dev " << worst_eq << " (bound 1e-6), mixture margin "
      << worst_margin << " (bound -1e-6)";
  return worst_eq <= 1e-6 && worst_margin >= -1e-6;
}

// --- criterion 3: self-adjointness and eigenfunction residual order -------
bool criterion_operator(Ctx&, std::ostream& out) {
  const GridPtr g = make_grid(12.0, 512, 3);
  std::mt19937_64 gen(20240818u);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = random_field(g, gen);
    const Field h = random_field(g, gen);
    const double lhs = discrete_dot_k(apply_l(f), h);
    const double rhs = discrete_dot_k(f, apply_l(h));
    const double scale =
        std::sqrt(discrete_dot_k(f, f)) * std::sqrt(discrete_dot_k(h, h));
    worst = std::max(worst, std::fabs(lhs - rhs) / scale);
  }
  const double r1 = eig_residual(512);
  const double r2 = eig_residual(1024);
  const double r3 = eig_residual(2048);
  const double q1 = r1 / r2;
  const double q2 = r2 / r3;
  out << "self-adjointness " << worst
      << " (bound 1e-10), halving ratios " << q1 << ", " << q2
      << " (window [3.4, 4.6])";
  return worst <= 1e-10 && q1 >= 3.4 && q1 <= 4.6 && q2 >= 3.4 && q2 <= 4.6;
}

// --- criterion 4: Nehari root cross-check and manifold identity -----------
bool criterion_nehari(Ctx&, std::ostream& out) {
  const GridPtr g = make_grid(16.0, 2048, 3);
  std::mt19937_64 gen(20240819u);
  double worst_root = 0.0;
  double worst_ident = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field w = random_mixture(g, gen, 0.3, 2.0);
    const NehariScaling sc = nehari_scaling(w, kP33);
    const double b_bis = nehari_root_bisect(sc.q_coeff, sc.a_coeff, kP33.p, 0.0);
    worst_root = std::max(worst_root, std::fabs(b_bis - sc.b_star) / sc.b_star);
    std::vector<double> scaled = w.values;
    for (double& v : scaled) v *= sc.b_star;
    const FunctionalReport r = report(make_field(g, std::move(scaled)), kP33);
    const double target = (kP33.p - 1.0) / (2.0 * (kP33.p + 1.0)) * r.lp1;
    worst_ident = std::max(
        worst_ident, std::fabs(r.energy - target) / std::fabs(target));
  }
  out << "root dev " << worst_root << " (bound 1e-10), identity dev "
      << worst_ident << " (bound 1e-8)";
  return worst_root <= 1e-10 && worst_ident <= 1e-8;
}

// --- criterion 5: energy identity, first-order ledger convergence ---------
bool criterion_energy_ledger(Ctx&, std::ostream& out) {
  const GridPtr g = make_grid(12.0, 2048, 3);
  const Field u0 = gaussian_field(g, 0.5, 0.5);
  const auto run = [&](double dt) {
    SolverConfig cfg;
    cfg.dt_init = dt;
    cfg.s_max = 5.0;
    return evolve(u0, kP33, cfg);
  };
  const SimulationTrace coarse = run(2e-3);
  const SimulationTrace fine = run(1e-3);
  const auto max_res = [](const SimulationTrace& t) {
    double m = 0.0;
    for (double r : energy_ledger(t)) m = std::max(m, r);
    return m;
  };
  const double m2 = max_res(coarse);
  const double m1 = max_res(fine);
  bool monotone = true;
  for (std::size_t k = 1; k < fine.rows.size(); ++k) {
    if (fine.rows[k].energy > fine.rows[k - 1].energy + m1) {
      monotone = false;
      break;
    }
  }
  out << "ledger max " << m2 << " @dt=2e-3, " << m1
      << " @dt=1e-3, ratio " << m2 / m1
      << " (bound >= 1.7), E monotone: " << (monotone ? "yes" : "no");
  return m2 / m1 >= 1.7 && monotone;
}

// --- criterion 6: dichotomy with blow-up bracket refinement ---------------
bool criterion_dichotomy(Ctx& ctx, std::ostream& out) {
  const WellEstimate est =
      well_depth_upper(GaussianFamilySpec{0.15, 3.0, 20}, kP33, ctx.grid);
  ctx.d_est = est.d_upper;

  SolverConfig wcfg;
  wcfg.s_max = 20.0;
  wcfg.dt_min = 1e-10;
  ctx.w_run = evolve(gaussian_field(ctx.grid, 0.5, 0.5), kP33, wcfg, ctx.d_est);
  m_functionals(*ctx.w_run);

  SolverConfig zcfg;
  zcfg.s_max = 20.0;
  zcfg.dt_min = 1e-8;
  ctx.z_run_a =
      evolve(gaussian_field(ctx.grid, 0.5, 3.5), kP33, zcfg, ctx.d_est);
  m_functionals(*ctx.z_run_a);

  zcfg.dt_min = 1e-10;
  ctx.z_run_b =
      evolve(gaussian_field(ctx.grid, 0.5, 3.5), kP33, zcfg, ctx.d_est);
  m_functionals(*ctx.z_run_b);

  const RunOutcome& w = ctx.w_run->outcome;
  const RunOutcome& za = ctx.z_run_a->outcome;
  const RunOutcome& zb = ctx.z_run_b->outcome;

  const double h1k0 = ctx.w_run->rows.front().h1k_sq;
  const bool w_ok = w.verdict == Verdict::Global &&
                    w.classification == Classification::InWellHeuristic &&
                    std::isfinite(w.max_h1k_sq) &&
                    w.max_h1k_sq <= 10.0 * h1k0;

  const double width_a = za.ts_hi - za.ts_lo;
  const double width_b = zb.ts_hi - zb.ts_lo;
  const bool z_ok =
      za.verdict == Verdict::BlowUp &&
      za.classification == Classification::ExteriorCertified &&
      za.has_blowup && za.ts_mid > 0.0 && std::isfinite(za.ts_mid) &&
      std::fabs(za.t_blowup - std::expm1(za.ts_mid)) <=
          1e-12 * (1.0 + za.t_blowup) &&
      zb.verdict == Verdict::BlowUp && width_b < width_a;

  out << "W: " << to_string(w.verdict) << "/" << to_string(w.classification)
      << " max_h1k " << w.max_h1k_sq << " (init " << h1k0 << "); Z: "
      << to_string(za.verdict) << "/" << to_string(za.classification)
      << " T_s " << za.ts_mid << " T " << za.t_blowup << ", bracket "
      << width_a << " -> " << width_b << " under dt refinement";
  return w_ok && z_ok;
}

// --- criterion 7: sign of I never flips along either run ------------------
bool criterion_invariance(Ctx& ctx, std::ostream& out) {
  if (!ctx.w_run || !ctx.z_run_a || !ctx.z_run_b) {
    out << "criterion 6 runs unavailable";
    return false;
  }
  const InvarianceReport rw = invariance_monitor(*ctx.w_run);
  const InvarianceReport ra = invariance_monitor(*ctx.z_run_a);
  const InvarianceReport rb = invariance_monitor(*ctx.z_run_b);
  out << "W sign " << rw.initial_sign << " flipped " << rw.flipped
      << "; Z sign " << ra.initial_sign << " flipped " << ra.flipped << "/"
      << rb.flipped;
  return rw.initial_sign == 1 && !rw.flipped && ra.initial_sign == -1 &&
         !ra.flipped && !rb.flipped;
}

// --- criterion 8: M-functional relations ----------------------------------
bool criterion_m_relations(Ctx& ctx, std::ostream& out) {
  if (!ctx.w_run || !ctx.z_run_a || !ctx.z_run_b) {
    out << "criterion 6 runs unavailable";
    return false;
  }
  const MPrimeConsistency cw = m_prime_consistency(*ctx.w_run);
  const MPrimeConsistency ca = m_prime_consistency(*ctx.z_run_a);
  const MPrimeConsistency cb = m_prime_consistency(*ctx.z_run_b);
  const double worst_ratio =
      std::max(cw.max_ratio, std::max(ca.max_ratio, cb.max_ratio));

  const double e1 = epsilon1(*ctx.z_run_a, ctx.d_est);
  double min_mpp = 1e300;
  for (const TraceRow& row : ctx.z_run_a->rows) {
    min_mpp = std::min(min_mpp, row.m_double_prime);
  }

  const ConcavityCheck csa = cauchy_schwarz_surrogate(*ctx.z_run_a);
  const ConcavityCheck csb = cauchy_schwarz_surrogate(*ctx.z_run_b);

  out << "M' ratio " << worst_ratio << " (bound 5); eps1 " << e1
      << ", min M'' " << min_mpp << "; CS slack rel " << csa.min_slack_rel
      << "/" << csb.min_slack_rel << " (bound -1e-9)";
  return worst_ratio <= 5.0 && e1 > 0.0 && min_mpp >= e1 && csa.applicable &&
         csa.min_slack_rel >= -1e-9 && csb.applicable &&
         csb.min_slack_rel >= -1e-9;
}

// --- criterion 9: well depth and the Lemma 3.3 same-family check ----------
bool criterion_well_depth(Ctx& ctx, std::ostream& out) {
  const GaussianFamilySpec fam{0.15, 3.0, 20};
  const GaussianFamilySpec refined{0.15, 3.0, 39};  // superset grid
  const WellEstimate d20 = well_depth_upper(fam, kP33, ctx.grid);
  const WellEstimate d39 = well_depth_upper(refined, kP33, ctx.grid);
  const double rel_change = std::fabs(d39.d_upper - d20.d_upper) / d20.d_upper;
  const double vs_frozen = std::fabs(d20.d_upper - kDFrozen) / kDFrozen;

  bool lemma = true;
  std::ostringstream deps;
  for (double eps : {0.01, 0.1, 0.5}) {
    const double de = d_eps_upper(fam, kP33, ctx.grid, eps);
    const bool ok = d20.d_upper <= de + 0.5 * eps + 1e-6;
    lemma = lemma && ok;
    deps << " d_" << eps << " = " << de << (ok ? " ok" : " VIOLATED");
  }
  out << "d_upper " << d20.d_upper << " (frozen " << kDFrozen << ", dev "
      << vs_frozen << "), refine dev " << rel_change << " (bound 0.05);"
      << deps.str();
  return d20.d_upper > 0.0 && vs_frozen <= 1e-4 && rel_change <= 0.05 && lemma;
}

// --- criterion 10: time maps and s = 0 identity ---------------------------
bool criterion_time_maps(Ctx& ctx, std::ostream& out) {
  double worst = 0.0;
  bool ok = time_forward(0.0) == 0.0 && time_back(0.0) == 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double t = std::pow(10.0, -6.0 + 0.2 * k);
    const double rt = std::fabs(time_back(time_forward(t)) - t) /
                      std::max(1.0, t);
    const double s = time_forward(t);
    const double rs = std::fabs(time_forward(time_back(s)) - s) /
                      std::max(1.0, s);
    worst = std::max(worst, std::max(rt, rs));
  }
  ok = ok && worst <= 1e-12;

  const Field w = gaussian_field(ctx.grid, 0.5, 1.0);
  const Unrescaled u = unrescale(w, 0.0, kP33);
  bool identity = u.t == 0.0;
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    identity = identity && u.u.values[i] == w.values[i];
  }
  out << "round-trip max rel " << worst
      << " (bound 1e-12), s=0 identity: " << (identity ? "exact" : "BROKEN");
  return ok && identity;
}

// --- criterion 11: byte-identical sweep output ----------------------------
bool criterion_determinism(Ctx&, std::ostream& out) {
  const fs::path work = fs::temp_directory_path() / "heatwell_acceptance";
  fs::remove_all(work);
  fs::create_directories(work);
  {
    std::ofstream cfg(work / "sweep.json", std::ios::binary);
    cfg << R"({
  "grid": {"r_max": 12.0, "num_points": 1024},
  "solver": {"dt_init": 1e-3, "dt_min": 1e-8, "s_max": 6.0},
  "sweep": {"a_values": [0.5], "b_values": [0.25, 0.5, 1.0, 2.0, 3.5]},
  "well_family": {"a_min": 0.15, "a_max": 3.0, "a_count": 20}
})";
  }
  const auto run = [&](const std::string& sub) {
    const std::string cmd = std::string(HEATWELL_CLI_PATH) +
                            " sweep --config " + (work / "sweep.json").string() +
                            " --threads 3 --seed 42 --output " +
                            (work / sub).string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  if (!run("r1") || !run("r2")) {
    out << "cli sweep invocation failed";
    return false;
  }
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const std::string s1 = slurp(work / "r1" / "sweep.csv");
  const std::string s2 = slurp(work / "r2" / "sweep.csv");
  const std::size_t lines = std::count(s1.begin(), s1.end(), '\n');
  out << "two seeded runs: " << s1.size() << " bytes, " << lines
      << " lines, byte-identical: " << (s1 == s2 ? "yes" : "NO");
  return !s1.empty() && s1 == s2;
}

}  // namespace

int main() {
  Ctx ctx;
  ctx.grid = make_grid(16.0, 4096, 3);

  struct Criterion {
    const char* name;
    std::function<bool(Ctx&, std::ostream&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"oracle agreement (closed forms vs quadrature)", criterion_oracle},
      {"Kavian lower bound (equality case + mixtures)", criterion_kavian},
      {"operator self-adjointness + eigen residual order", criterion_operator},
      {"Nehari scaling cross-check + manifold identity", criterion_nehari},
      {"energy identity ledger, first-order convergence", criterion_energy_ledger},
      {"dichotomy: global in-well run vs certified blow-up", criterion_dichotomy},
      {"flow invariance: I never changes sign", criterion_invariance},
      {"M-functional relations (Eq. 3.2, 3.5-3.7)", criterion_m_relations},
      {"well depth: positivity, stability, Lemma 3.3", criterion_well_depth},
      {"time maps round-trip + s=0 identity", criterion_time_maps},
      {"determinism: byte-identical sweep CSV", criterion_determinism},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    std::ostringstream detail;
    bool pass = false;
    try {
      pass = criteria[k].fn(ctx, detail);
    } catch (const std::exception& e) {
      detail << "exception: " << e.what();
    }
    if (!pass) ++failures;
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << (k + 1)
              << ": " << criteria[k].name << " — " << detail.str() << "\n";
  }
  if (failures == 0) {
    std::cout << "acceptance: all " << criteria.size() << " criteria passed\n";
  } else {
    std::cout << "acceptance: " << failures << " criteria FAILED\n";
  }
  return failures == 0 ? 0 : 1;
}
