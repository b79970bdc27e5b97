#include "pauli/splitting.hpp"

#include <cmath>
#include <sstream>

#include "pauli/errors.hpp"

namespace pauli {

namespace {

void require(const SpinorField& s, Representation rep, const char* op) {
  if (s.representation != rep) {
    throw StateError(std::string(op) + ": state must be in " +
                     (rep == Representation::physical ? "physical" : "spectral") +
                     " representation");
  }
}

void check_size(std::size_t have, std::size_t want, const char* op) {
  if (have != want) throw InvalidArgument(std::string(op) + ": propagator/state size mismatch");
}

Vec3 axpy(const Vec3& x, double s, const Vec3& k) {
  return {x[0] + s * k[0], x[1] + s * k[1], x[2] + s * k[2]};
}

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("epsilon must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw ConfigError("t_final must be non-negative");
  }
  if (characteristic_substeps < 1) throw ConfigError("characteristic_substeps must be >= 1");
  if (snapshot_stride < 1) throw ConfigError("snapshot_stride must be >= 1");
  const double ratio = t_final / dt;
  const double n = std::round(ratio);
  if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
    std::ostringstream msg;
    msg << "t_final/dt = " << ratio << " is not an integer";
    throw ConfigError(msg.str());
  }
}

std::size_t SolverConfig::step_count() const {
  validate();
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

Matrix2 coupling_matrix_closed_form(double b1, double b2, double dt) {
  if (!std::isfinite(b1) || !std::isfinite(b2) || !std::isfinite(dt)) {
    throw InvalidArgument("coupling_matrix_closed_form: non-finite input");
  }
  const double rho = 0.5 * std::hypot(b1, b2);
  if (rho == 0.0) return {1.0, 0.0, 0.0, 1.0};
  const Complex d1(0.5 * b2, 0.5 * b1);
  const Complex d2(-0.5 * b2, 0.5 * b1);
  const double c = std::cos(rho * dt);
  const double s = std::sin(rho * dt) / rho;
  return {c, s * d1, s * d2, c};
}

std::vector<Vec3> trace_characteristics(const EMFields& fields, const Grid& grid, double dt,
                                        int substeps) {
  if (substeps < 1) throw InvalidArgument("trace_characteristics: substeps must be >= 1");
  // In reversed time s = t_{n+1} - t the ODE reads dz/ds = +A(z), z(0) = x_j.
  const double h = dt / substeps;
  std::vector<Vec3> feet(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Vec3 z = grid.point(i);
    for (int s = 0; s < substeps; ++s) {
      const Vec3 k1 = fields.vector_potential(z);
      const Vec3 k2 = fields.vector_potential(axpy(z, 0.5 * h, k1));
      const Vec3 k3 = fields.vector_potential(axpy(z, 0.5 * h, k2));
      const Vec3 k4 = fields.vector_potential(axpy(z, h, k3));
      for (int a = 0; a < 3; ++a) z[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    }
    if (!std::isfinite(z[0]) || !std::isfinite(z[1]) || !std::isfinite(z[2])) {
      const Vec3 x = grid.point(i);
      std::ostringstream msg;
      msg << "trace_characteristics: non-finite trajectory from grid point (" << x[0] << ", "
          << x[1] << ", " << x[2] << ")";
      throw EvaluationError(msg.str());
    }
    feet[i] = z;
  }
  return feet;
}

std::vector<Vec3> trace_characteristics(const EMFields& fields, const Grid& grid,
                                        const SolverConfig& config) {
  return trace_characteristics(fields, grid, config.dt, config.characteristic_substeps);
}

Propagators precompute_propagators(const EMFields& fields, const FieldSamples& samples,
                                   const Grid& grid, double epsilon, double dt, int substeps) {
  if (samples.counts != grid.counts()) {
    throw InvalidArgument("precompute_propagators: field samples do not match grid");
  }
  if (!(epsilon > 0.0) || !(dt > 0.0)) {
    throw InvalidArgument("precompute_propagators: epsilon and dt must be positive");
  }
  const std::size_t n = grid.size();
  Propagators p;
  p.dt = dt;
  p.epsilon = epsilon;
  p.potential_phase1.resize(n);
  p.potential_phase2.resize(n);
  p.coupling.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a2 = samples.a[0][i] * samples.a[0][i] + samples.a[1][i] * samples.a[1][i] +
                      samples.a[2][i] * samples.a[2][i];
    const double scalar = 0.5 * a2 + samples.phi[i];
    const double zeeman = 0.5 * epsilon * samples.b[2][i];
    p.potential_phase1[i] = std::polar(1.0, -dt / epsilon * (scalar - zeeman));
    p.potential_phase2[i] = std::polar(1.0, -dt / epsilon * (scalar + zeeman));
    p.coupling[i] = coupling_matrix_closed_form(samples.b[0][i], samples.b[1][i], dt);
  }

  p.kinetic_phase.resize(n);
  const Index3& c = grid.counts();
  for (std::size_t j3 = 0; j3 < c[2]; ++j3) {
    const double w3 = grid.angular_frequency(2, j3);
    for (std::size_t j2 = 0; j2 < c[1]; ++j2) {
      const double w2 = grid.angular_frequency(1, j2);
      for (std::size_t j1 = 0; j1 < c[0]; ++j1) {
        const double w1 = grid.angular_frequency(0, j1);
        p.kinetic_phase[grid.index(j1, j2, j3)] =
            std::polar(1.0, -0.5 * epsilon * dt * (w1 * w1 + w2 * w2 + w3 * w3));
      }
    }
  }

  p.departure_points = trace_characteristics(fields, grid, dt, substeps);
  p.identity_transport = true;
  for (std::size_t i = 0; i < n && p.identity_transport; ++i) {
    p.identity_transport = p.departure_points[i] == grid.point(i);
  }
  return p;
}

Propagators precompute_propagators(const EMFields& fields, const FieldSamples& samples,
                                   const Grid& grid, const SolverConfig& config) {
  return precompute_propagators(fields, samples, grid, config.epsilon, config.dt,
                                config.characteristic_substeps);
}

StrangPropagators precompute_strang_propagators(const EMFields& fields,
                                                const FieldSamples& samples, const Grid& grid,
                                                const SolverConfig& config) {
  StrangPropagators p;
  p.half = precompute_propagators(fields, samples, grid, config.epsilon, 0.5 * config.dt,
                                  config.characteristic_substeps);
  p.full_coupling.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    p.full_coupling[i] = coupling_matrix_closed_form(samples.b[0][i], samples.b[1][i], config.dt);
  }
  return p;
}

SpinorField potential_step(const SpinorField& state, const Propagators& prop) {
  require(state, Representation::physical, "potential_step");
  check_size(prop.potential_phase1.size(), state.size(), "potential_step");
  SpinorField out = state;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.u1[i] *= prop.potential_phase1[i];
    out.u2[i] *= prop.potential_phase2[i];
  }
  return out;
}

SpinorField kinetic_step(const SpinorField& state, const Propagators& prop, const Grid& grid) {
  check_state(state, grid, "kinetic_step");
  check_size(prop.kinetic_phase.size(), state.size(), "kinetic_step");
  SpinorField out = to_representation(state, grid, Representation::spectral);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.u1[i] *= prop.kinetic_phase[i];
    out.u2[i] *= prop.kinetic_phase[i];
  }
  return out;
}

SpinorField advection_step(const SpinorField& state, const Propagators& prop, const Grid& grid) {
  require(state, Representation::spectral, "advection_step");
  check_state(state, grid, "advection_step");
  check_size(prop.departure_points.size(), state.size(), "advection_step");
  if (prop.identity_transport) return to_representation(state, grid, Representation::physical);

  SpinorField out = SpinorField::zeros(grid);
  const Complex* in[] = {state.u1.data(), state.u2.data()};
  Complex* dst[] = {out.u1.data(), out.u2.data()};
  detail::interpolate_components(in, prop.departure_points, grid, dst);
  return out;
}

SpinorField coupling_step(const SpinorField& state, std::span<const Matrix2> matrices) {
  require(state, Representation::physical, "coupling_step");
  check_size(matrices.size(), state.size(), "coupling_step");
  SpinorField out = state;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Matrix2& m = matrices[i];
    const Complex a = state.u1[i];
    const Complex b = state.u2[i];
    out.u1[i] = m.m00 * a + m.m01 * b;
    out.u2[i] = m.m10 * a + m.m11 * b;
  }
  return out;
}

SpinorField coupling_step(const SpinorField& state, const Propagators& prop) {
  return coupling_step(state, prop.coupling);
}

SpinorField lie_step(const SpinorField& state, const Propagators& prop, const Grid& grid) {
  SpinorField s = potential_step(state, prop);
  s = kinetic_step(s, prop, grid);
  s = advection_step(s, prop, grid);
  return coupling_step(s, prop);
}

SpinorField strang_step(const SpinorField& state, const StrangPropagators& props,
                        const Grid& grid) {
  const Propagators& h = props.half;
  SpinorField s = potential_step(state, h);
  s = kinetic_step(s, h, grid);
  s = advection_step(s, h, grid);
  s = coupling_step(s, props.full_coupling);
  s = advection_step(to_representation(s, grid, Representation::spectral), h, grid);
  s = kinetic_step(s, h, grid);
  return potential_step(to_representation(s, grid, Representation::physical), h);
}

SpinorField evolve(const SpinorField& state0, const EMFields& fields, const Grid& grid,
                   const SolverConfig& config, const EvolveObserver& observer) {
  check_state(state0, grid, "evolve");
  const std::size_t steps = config.step_count();
  SpinorField state = to_representation(state0, grid, Representation::physical);
  if (observer.on_snapshot) observer.on_snapshot(0, 0.0, state);
  if (steps == 0) return state;

  const FieldSamples samples = sample_fields(fields, grid);
  Propagators lie;
  StrangPropagators strang;
  if (config.order == SplittingOrder::lie) {
    lie = precompute_propagators(fields, samples, grid, config);
  } else {
    strang = precompute_strang_propagators(fields, samples, grid, config);
  }

  for (std::size_t n = 1; n <= steps; ++n) {
    state = config.order == SplittingOrder::lie ? lie_step(state, lie, grid)
                                                : strang_step(state, strang, grid);
    if (!all_finite(state)) {
      throw DivergenceError(n, "non-finite state after step " + std::to_string(n));
    }
    const double t = static_cast<double>(n) * config.dt;
    if (observer.on_record) {
      observer.on_record(make_record(t, state, samples, grid, config.epsilon));
    }
    if (observer.on_snapshot && n % static_cast<std::size_t>(config.snapshot_stride) == 0) {
      observer.on_snapshot(n, t, state);
    }
  }
  return state;
}

}  // namespace pauli
