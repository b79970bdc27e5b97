#include "pauli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "pauli/errors.hpp"
#include "pauli/oracle.hpp"
#include "pauli/output.hpp"

namespace pauli {

namespace {

// Gate shared by every command that time-steps: the advection step relies
// on div A = 0, so a field failing validation aborts the command.
bool fields_valid(const FieldSamples& samples, const Grid& grid, double tol, std::ostream& log) {
  const FieldValidation v = validate_fields(samples, grid, tol);
  if (!v.ok()) {
    log << "error: field validation failed (max |div A| = " << v.max_divergence
        << ", max |curl A - B| = " << v.max_curl_error << ", tol = " << tol << ")\n";
  }
  return v.ok();
}

std::string snapshot_name(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%06zu.vtk", step);
  return buf;
}

// Wraps a command body so configuration and numerical failures map onto the
// documented exit codes.
int guarded(std::ostream& log, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DivergenceError& e) {
    log << "error: numerical divergence at step " << e.step() << ": " << e.what() << '\n';
    return kExitDivergence;
  } catch (const EvaluationError& e) {
    log << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const std::exception& e) {
    // Unwritable output directory and similar environment problems.
    log << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] { return run_command(cfg, field_preset(cfg.field_preset), log); });
}

int run_command(const RunConfig& cfg, const EMFields& fields, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const Grid grid = build_grid(cfg.lengths, cfg.counts);
    const FieldSamples samples = sample_fields(fields, grid);
    if (!fields_valid(samples, grid, cfg.gauge_tol, log)) return int{kExitValidation};

    const SolverConfig solver = cfg.solver();
    const SpinorField state0 = initial_preset(cfg.initial_preset, grid);
    SeriesWriter series(cfg.output_dir / "series.csv");
    std::size_t snapshots = 0;
    EvolveObserver observer;
    observer.on_record = [&](const SeriesRecord& r) { series.write(r); };
    observer.on_snapshot = [&](std::size_t step, double t, const SpinorField& s) {
      write_vtk_snapshot(cfg.output_dir / snapshot_name(step), s, grid, t);
      ++snapshots;
    };
    const SpinorField final_state = evolve(state0, fields, grid, solver, observer);
    const SeriesRecord last = make_record(cfg.t_final, final_state, samples, grid, cfg.epsilon);
    log << "run: " << solver.step_count() << " steps, " << snapshots << " snapshots, final mass "
        << format_number(last.mass) << ", alpha " << format_number(last.alpha) << '\n';
    return int{kExitOk};
  });
}

int converge_command(const RunConfig& cfg, const std::vector<double>& dt_list,
                     double dt_reference, std::ostream& log) {
  return guarded(log, [&] {
    return converge_command(cfg, field_preset(cfg.field_preset), dt_list, dt_reference, log);
  });
}

int converge_command(const RunConfig& cfg, const EMFields& fields,
                     const std::vector<double>& dt_list, double dt_reference, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    if (dt_list.empty()) throw ConfigError("converge: at least one --dt is required");
    const double coarsest_fine = *std::min_element(dt_list.begin(), dt_list.end());
    if (!(dt_reference < coarsest_fine)) {
      throw ConfigError("converge: reference dt must be strictly finer than every --dt");
    }
    auto solver_for = [&](double dt) {
      SolverConfig s = cfg.solver();
      s.dt = dt;
      s.validate();
      return s;
    };
    const SolverConfig ref_solver = solver_for(dt_reference);
    std::vector<SolverConfig> coarse;
    for (double dt : dt_list) coarse.push_back(solver_for(dt));

    const Grid grid = build_grid(cfg.lengths, cfg.counts);
    const FieldSamples samples = sample_fields(fields, grid);
    if (!fields_valid(samples, grid, cfg.gauge_tol, log)) return int{kExitValidation};
    const SpinorField state0 = initial_preset(cfg.initial_preset, grid);

    const SpinorField reference = evolve(state0, fields, grid, ref_solver);
    std::vector<std::vector<double>> rows;
    std::vector<double> dts;
    std::vector<double> errs;
    for (const auto& s : coarse) {
      const ErrorMetrics e = state_error(evolve(state0, fields, grid, s), reference, grid);
      rows.push_back({s.dt, e.max_abs, e.rel});
      dts.push_back(s.dt);
      errs.push_back(e.max_abs);
      log << "dt=" << format_number(s.dt) << " max_abs_error=" << format_number(e.max_abs)
          << " max_rel_error=" << format_number(e.rel) << '\n';
    }
    const auto slope = fit_loglog_slope(dts, errs);
    write_error_table(cfg.output_dir / "converge.csv", "dt,max_abs_error,max_rel_error", rows,
                      slope);
    log << "slope=" << (slope ? format_number(*slope) : std::string("nan")) << '\n';
    return int{kExitOk};
  });
}

int oracle_command(const RunConfig& cfg, const std::vector<double>& dt_list, std::ostream& log) {
  return guarded(log,
                 [&] { return oracle_command(cfg, field_preset(cfg.field_preset), dt_list, log); });
}

int oracle_command(const RunConfig& cfg, const EMFields& fields,
                   const std::vector<double>& dt_list, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    if (dt_list.empty()) throw ConfigError("oracle: at least one --dt is required");
    const Grid grid = build_grid(cfg.lengths, cfg.counts);
    if (2 * grid.size() > kMaxOracleDimension) {
      throw ConfigError("oracle: grid too large for the dense oracle (dimension " +
                        std::to_string(2 * grid.size()) + " > " +
                        std::to_string(kMaxOracleDimension) + ")");
    }
    const FieldSamples samples = sample_fields(fields, grid);
    if (!fields_valid(samples, grid, cfg.gauge_tol, log)) return int{kExitValidation};
    const SpinorField state0 = initial_preset(cfg.initial_preset, grid);

    for (double dt : dt_list) {
      SolverConfig s = cfg.solver();
      s.dt = dt;
      s.validate();
    }
    const ConvergenceTable table =
        convergence_study(state0, fields, grid, cfg.epsilon, dt_list, cfg.t_final, cfg.order,
                          cfg.characteristic_substeps);
    std::vector<std::vector<double>> rows;
    for (const auto& r : table.rows) {
      rows.push_back({r.dt, r.alpha_error});
      log << "dt=" << format_number(r.dt) << " alpha_error=" << format_number(r.alpha_error)
          << '\n';
    }
    write_error_table(cfg.output_dir / "oracle.csv", "dt,alpha_error", rows, table.slope);
    log << "slope=" << (table.slope ? format_number(*table.slope) : std::string("nan")) << '\n';
    return int{kExitOk};
  });
}

int validate_command(const RunConfig& cfg, std::ostream& log) {
  return guarded(log, [&] { return validate_command(cfg, field_preset(cfg.field_preset), log); });
}

namespace {

struct CheckLog {
  std::ostream& out;
  int failures = 0;

  void report(const std::string& name, bool pass, const std::string& detail) {
    out << (pass ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    if (!pass) ++failures;
  }
  void skip(const std::string& name, const std::string& why) {
    out << "SKIP " << name << "  " << why << '\n';
  }
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

double rel_change(double before, double after) {
  const double scale = std::max(std::abs(before), 1e-300);
  return std::abs(after - before) / scale;
}

}  // namespace

int validate_command(const RunConfig& cfg, const EMFields& fields, std::ostream& log) {
  return guarded(log, [&] {
    cfg.validate();
    const Grid grid = build_grid(cfg.lengths, cfg.counts);
    const FieldSamples samples = sample_fields(fields, grid);
    CheckLog checks{log};

    const FieldValidation fv = validate_fields(samples, grid, cfg.gauge_tol);
    checks.report("coulomb-gauge", fv.coulomb_gauge_ok, "max|div A| = " + sci(fv.max_divergence));
    checks.report("curl-consistency", fv.curl_ok, "max|curl A - B| = " + sci(fv.max_curl_error));

    const Propagators prop = precompute_propagators(fields, samples, grid, cfg.solver());
    double unitarity = 0.0;
    for (const Matrix2& m : prop.coupling) {
      // M^H M - I
      const Complex a00 = std::conj(m.m00) * m.m00 + std::conj(m.m10) * m.m10 - 1.0;
      const Complex a01 = std::conj(m.m00) * m.m01 + std::conj(m.m10) * m.m11;
      const Complex a11 = std::conj(m.m01) * m.m01 + std::conj(m.m11) * m.m11 - 1.0;
      unitarity = std::max({unitarity, std::abs(a00), std::abs(a01), std::abs(a11)});
    }
    checks.report("coupling-unitarity", unitarity <= 1e-13, "max|M^H M - I| = " + sci(unitarity));

    const std::size_t steps = std::clamp<std::size_t>(cfg.solver().step_count(), 1, 3);
    SpinorField state = initial_preset(cfg.initial_preset, grid);
    double potential_dev = 0.0;
    double kinetic_dev = 0.0;
    double coupling_mass_dev = 0.0;
    double advection_growth = 0.0;
    double step_alpha_growth = 0.0;
    for (std::size_t n = 0; n < steps; ++n) {
      const auto before = component_l2(state, grid);
      const double alpha_before = before.first + before.second;
      SpinorField s = potential_step(state, prop);
      const auto after_potential = component_l2(s, grid);
      s = kinetic_step(s, prop, grid);
      const auto after_kinetic = component_l2(s, grid);
      s = advection_step(s, prop, grid);
      const auto after_advection = component_l2(s, grid);
      const double mass_before_coupling = total_mass(s, grid);
      s = coupling_step(s, prop);
      const double mass_after_coupling = total_mass(s, grid);

      potential_dev = std::max({potential_dev, rel_change(before.first, after_potential.first),
                                rel_change(before.second, after_potential.second)});
      kinetic_dev =
          std::max({kinetic_dev, rel_change(after_potential.first, after_kinetic.first),
                    rel_change(after_potential.second, after_kinetic.second)});
      advection_growth = std::max({advection_growth, after_advection.first - after_kinetic.first,
                                   after_advection.second - after_kinetic.second});
      coupling_mass_dev =
          std::max(coupling_mass_dev, rel_change(mass_before_coupling, mass_after_coupling));
      step_alpha_growth = std::max(step_alpha_growth, alpha_norm(s, grid) - alpha_before);
      if (!all_finite(s)) throw DivergenceError(n + 1, "non-finite state in validation");
      state = std::move(s);
    }
    const std::string over = " over " + std::to_string(steps) + " step(s)";
    checks.report("potential-step-l2", potential_dev <= 1e-12,
                  "max rel change = " + sci(potential_dev) + over);
    checks.report("kinetic-step-l2", kinetic_dev <= 1e-12,
                  "max rel change = " + sci(kinetic_dev) + over);
    checks.report("advection-l2-nonincrease", advection_growth <= 1e-10,
                  "max growth = " + sci(advection_growth) + over);
    checks.report("coupling-mass", coupling_mass_dev <= 1e-12,
                  "max rel change of ||U1||^2+||U2||^2 = " + sci(coupling_mass_dev) + over);

    if (is_decoupled(samples)) {
      checks.report("alpha-nonincrease", step_alpha_growth <= 1e-10,
                    "max growth = " + sci(step_alpha_growth) + over);

      // Spin-up data must not leak into u2, and u1 must not see u2.
      SpinorField full = initial_preset(cfg.initial_preset, grid);
      SpinorField up_only = full;
      std::fill(up_only.u2.begin(), up_only.u2.end(), Complex(0.0));
      bool exact = true;
      for (const Matrix2& m : prop.coupling) {
        exact = exact && m.m00 == Complex(1.0) && m.m11 == Complex(1.0) &&
                m.m01 == Complex(0.0) && m.m10 == Complex(0.0);
      }
      double leak = 0.0;
      double influence = 0.0;
      for (std::size_t n = 0; n < steps; ++n) {
        full = lie_step(full, prop, grid);
        up_only = lie_step(up_only, prop, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          leak = std::max(leak, std::abs(up_only.u2[i]));
          influence = std::max(influence, std::abs(full.u1[i] - up_only.u1[i]));
        }
      }
      checks.report("u2-influence-free", exact && leak == 0.0 && influence == 0.0,
                    "identity coupling: " + std::string(exact ? "yes" : "no") +
                        ", max|u2| from spin-up = " + sci(leak) +
                        ", max u1 difference = " + sci(influence));
    } else {
      checks.skip("alpha-nonincrease",
                  "B1/B2 couple the components; coupling conserves mass, not the alpha sum");
      checks.skip("u2-influence-free", "B1/B2 non-zero: components are coupled");
    }

    log << (checks.failures == 0 ? "all checks passed" : "some checks failed") << '\n';
    return checks.failures == 0 ? int{kExitOk} : int{kExitValidation};
  });
}

}  // namespace pauli
