// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pauli/observables.hpp"
#include "pauli/oracle.hpp"
#include "pauli/splitting.hpp"

using namespace pauli;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, double limit_seconds, const std::function<Result()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Result r = body();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0.0 || seconds < limit_seconds;
  const bool ok = r.ok && in_time;
  if (!ok) ++failures;
  std::ostringstream time;
  time.precision(3);
  time << seconds << " s";
  if (limit_seconds > 0.0) time << " (limit " << limit_seconds << " s)";
  std::printf("%s criterion %d: %s | %s | %s\n", ok ? "PASS" : "FAIL", id, title,
              r.detail.c_str(), time.str().c_str());
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

double rel_change(double before, double after) {
  return std::abs(after - before) / std::max(std::abs(before), 1e-300);
}

const Grid grid25({10, 10, 10}, {25, 25, 25});

SolverConfig solver_at(double dt, double t_final) {
  SolverConfig c;
  c.epsilon = 0.5;
  c.dt = dt;
  c.t_final = t_final;
  return c;
}

// Initial state paired with each experiment.
SpinorField experiment_state(const std::string& preset, const Grid& g) {
  return preset == "experiment1" ? initial_state_gaussian_pair(g) : initial_state_spin_up(g);
}

struct SeriesRun {
  double alpha0 = 0.0;
  double mass0 = 0.0;
  std::vector<SeriesRecord> records;
};

SeriesRun series_run(const std::string& preset) {
  SeriesRun run;
  const SpinorField u0 = experiment_state(preset, grid25);
  run.alpha0 = alpha_norm(u0, grid25);
  run.mass0 = total_mass(u0, grid25);
  EvolveObserver obs;
  obs.on_record = [&](const SeriesRecord& r) { run.records.push_back(r); };
  evolve(u0, field_preset(preset), grid25, solver_at(0.05, 1.0), obs);
  return run;
}

Result norm_identities() {
  const Grid g({10, 10, 10}, {16, 16, 16});
  const EMFields f = preset_experiment2();
  const FieldSamples s = sample_fields(f, g);
  const Propagators p = precompute_propagators(f, s, g, 0.5, 0.1, 4);
  SpinorField u = initial_state_spin_up(g);
  double potential = 0.0, kinetic = 0.0, coupling_alpha = 0.0, coupling_mass = 0.0;
  for (int n = 0; n < 10; ++n) {
    const auto n0 = component_l2(u, g);
    SpinorField v = potential_step(u, p);
    const auto n1 = component_l2(v, g);
    v = kinetic_step(v, p, g);
    const auto n2 = component_l2(v, g);
    v = advection_step(v, p, g);
    const double alpha_before = alpha_norm(v, g);
    const double mass_before = total_mass(v, g);
    v = coupling_step(v, p);
    potential = std::max({potential, rel_change(n0.first, n1.first),
                          rel_change(n0.second, n1.second)});
    kinetic = std::max({kinetic, rel_change(n1.first, n2.first), rel_change(n1.second, n2.second)});
    coupling_alpha = std::max(coupling_alpha, rel_change(alpha_before, alpha_norm(v, g)));
    coupling_mass = std::max(coupling_mass, rel_change(mass_before, total_mass(v, g)));
    u = std::move(v);
  }
  Result r;
  r.ok = potential <= 1e-12 && kinetic <= 1e-12 && coupling_alpha <= 1e-12;
  r.detail = "max rel change: potential " + sci(potential) + ", kinetic " + sci(kinetic) +
             ", alpha across coupling " + sci(coupling_alpha) + " (tol 1e-12); mass across coupling " +
             sci(coupling_mass);
  return r;
}

Result stability(const SeriesRun& e1, const SeriesRun& e2) {
  auto worst_growth = [](const SeriesRun& run, std::size_t& at) {
    double prev = run.alpha0, worst = -INFINITY;
    for (std::size_t i = 0; i < run.records.size(); ++i) {
      const double g = run.records[i].alpha - prev;
      if (g > worst) {
        worst = g;
        at = i + 1;
      }
      prev = run.records[i].alpha;
    }
    return worst;
  };
  std::size_t at1 = 0, at2 = 0;
  const double g1 = worst_growth(e1, at1);
  const double g2 = worst_growth(e2, at2);
  Result r;
  r.ok = e1.records.size() == 20 && e2.records.size() == 20 && g1 <= 1e-10 && g2 <= 1e-10;
  r.detail = "max per-step alpha increase: experiment1 " + sci(g1) + " (step " +
             std::to_string(at1) + "), experiment2 " + sci(g2) + " (step " + std::to_string(at2) +
             "), slack 1e-10; alpha(0)->alpha(T): " + fixed(e1.alpha0) + "->" +
             fixed(e1.records.back().alpha) + ", " + fixed(e2.alpha0) + "->" +
             fixed(e2.records.back().alpha);
  return r;
}

Result decoupling() {
  double worst = 0.0;
  std::size_t seen = 0;
  EvolveObserver obs;
  obs.on_snapshot = [&](std::size_t, double, const SpinorField& s) {
    ++seen;
    for (const auto& v : s.u2) worst = std::max(worst, std::abs(v));
  };
  SolverConfig c = solver_at(0.05, 1.0);
  c.snapshot_stride = 1;
  evolve(initial_state_spin_up(grid25), preset_experiment1(), grid25, c, obs);
  Result r;
  r.ok = seen == 21 && worst <= 1e-13;
  r.detail = "max |u2| over " + std::to_string(seen) + " states = " + sci(worst) + " (tol 1e-13)";
  return r;
}

Result oracle_order() {
  const Grid g({10, 10, 10}, {8, 8, 8});
  const std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
  bool ok = true;
  std::string detail;
  for (const char* preset : {"experiment1", "experiment2"}) {
    for (SplittingOrder order : {SplittingOrder::lie, SplittingOrder::strang}) {
      const ConvergenceTable t = convergence_study(initial_state_gaussian_pair(g),
                                                   field_preset(preset), g, 0.5, dts, 0.5, order);
      const double lo = order == SplittingOrder::lie ? 0.75 : 1.7;
      const double hi = order == SplittingOrder::lie ? 1.25 : 2.3;
      const bool in = t.slope && *t.slope >= lo && *t.slope <= hi;
      ok = ok && in;
      if (!detail.empty()) detail += "; ";
      detail += std::string(preset) + (order == SplittingOrder::lie ? " lie " : " strang ") +
                "slope " + (t.slope ? fixed(*t.slope) : "none") + " in [" + fixed(lo) + ", " +
                fixed(hi) + "]: " + (in ? "yes" : "no");
    }
  }
  return {ok, detail};
}

Result self_convergence() {
  const std::vector<double> coarse{0.4, 0.2, 0.1};
  const double t_final = 0.8;
  bool ok = true;
  std::string detail;
  for (const char* preset : {"experiment1", "experiment2"}) {
    const EMFields f = field_preset(preset);
    const SpinorField u0 = experiment_state(preset, grid25);
    const SpinorField ref = evolve(u0, f, grid25, solver_at(0.05, t_final));
    std::vector<double> err;
    for (double dt : coarse) {
      err.push_back(state_error(evolve(u0, f, grid25, solver_at(dt, t_final)), ref,
                                grid25).max_abs);
    }
    std::string ratios;
    for (std::size_t i = 1; i < err.size(); ++i) {
      const double q = err[i - 1] / err[i];
      ok = ok && err[i] < err[i - 1] && q >= 1.5 && q <= 2.6;
      ratios += (i > 1 ? ", " : "") + fixed(q);
    }
    if (!detail.empty()) detail += "; ";
    detail += std::string(preset) + " max_abs " + sci(err[0]) + " " + sci(err[1]) + " " +
              sci(err[2]) + ", ratios " + ratios;
  }
  return {ok, detail + " (window [1.5, 2.6], T = 0.8)"};
}

Result plane_wave() {
  const Grid g({10, 10, 10}, {16, 16, 16});
  const double eps = 0.5, dt = 0.05;
  const std::array<int, 3> m{1, 2, -3};
  Vec3 k;
  for (int a = 0; a < 3; ++a) k[a] = 2.0 * kPi * m[a] / 10.0;
  SpinorField w = SpinorField::zeros(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.point(i);
    w.u1[i] = std::polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
  }
  const SpinorField out = evolve(w, preset_zero(), g, solver_at(dt, 20 * dt));
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  const Complex phase = std::polar(1.0, -eps * k2 * (20 * dt) / 2.0);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    err = std::max({err, std::abs(out.u1[i] - phase * w.u1[i]), std::abs(out.u2[i])});
  }
  return {err <= 1e-12, "max error after 20 steps = " + sci(err) + " (tol 1e-12)"};
}

Result mass_conservation(const SeriesRun& e2) {
  const double drift = std::abs(e2.records.back().mass - e2.mass0) / e2.mass0;
  return {drift <= 1e-5, "experiment2 |mass(T) - mass(0)|/mass(0) = " + sci(drift) +
                             " (tol 1e-5)"};
}

Result oracle_soundness() {
  const Grid g({10, 10, 10}, {6, 6, 6});
  const DenseGenerator gen = assemble_generator(sample_fields(preset_experiment2(), g), g, 0.5);
  const double skew = anti_hermitian_residual(gen);
  double drift = 0.0;
  for (const SpinorField& u : {initial_state_spin_up(g), initial_state_gaussian_pair(g)}) {
    const SpinorField v = exact_evolve(u, gen, 0.5);
    const double before = std::sqrt(sum_abs2(u.u1) + sum_abs2(u.u2));
    const double after = std::sqrt(sum_abs2(v.u1) + sum_abs2(v.u2));
    drift = std::max(drift, rel_change(before, after));
  }
  return {skew <= 1e-10 && drift <= 1e-10, "max |G + G^H| = " + sci(skew) +
                                               ", stacked norm change = " + sci(drift) +
                                               " (tol 1e-10)"};
}

double max_continuity_residual(int n, double dt) {
  const Grid g({10, 10, 10}, {n, n, n});
  const EMFields f = preset_experiment2();
  const FieldSamples s = sample_fields(f, g);
  SpinorField prev = initial_state_spin_up(g);
  double worst = 0.0;
  EvolveObserver obs;
  SolverConfig c = solver_at(dt, 1.0);
  c.snapshot_stride = 1;
  obs.on_snapshot = [&](std::size_t step, double, const SpinorField& u) {
    if (step > 0) worst = std::max(worst, continuity_residual(prev, u, s, g, 0.5, dt));
    prev = u;
  };
  evolve(prev, f, g, c, obs);
  return worst;
}

Result continuity() {
  const double coarse = max_continuity_residual(16, 0.1);
  const double fine = max_continuity_residual(32, 0.05);
  const double factor = coarse / fine;
  return {factor >= 1.5, "max residual over [0, 1]: 16^3/dt=0.1 " + sci(coarse) +
                             ", 32^3/dt=0.05 " + sci(fine) + ", decrease factor " + fixed(factor) +
                             " (need >= 1.5)"};
}

}  // namespace

int main() {
  apply_thread_limit();

  report(1, "norm identities of the sub-steps (experiment2, 16^3, dt=0.1, 10 steps)", 10.0,
         norm_identities);

  SeriesRun e1, e2;
  report(2, "alpha norm non-increasing (both experiments, 25^3, dt=0.05, T=1)", 120.0, [&] {
    e1 = series_run("experiment1");
    e2 = series_run("experiment2");
    return stability(e1, e2);
  });

  report(3, "exact decoupling (experiment1 fields, spin-up state, 25^3)", 120.0, decoupling);
  report(4, "convergence order against the dense oracle (8^3, T=0.5)", 300.0, oracle_order);
  report(5, "self-convergence against dt=0.05 (25^3, dt 0.4/0.2/0.1)", 600.0, self_convergence);
  report(6, "free plane wave over 20 Lie steps", 1.0, plane_wave);
  report(7, "mass conservation (experiment2, criterion-2 run)", 0.0,
         [&] { return mass_conservation(e2); });
  report(8, "oracle generator soundness (experiment2, 6^3)", 60.0, oracle_soundness);
  report(9, "continuity residual under refinement (experiment2)", 300.0, continuity);

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
