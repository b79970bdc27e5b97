#pragma once

#include <functional>

#include "pauli/fields.hpp"
#include "pauli/observables.hpp"
#include "pauli/state.hpp"

namespace pauli {

enum class SplittingOrder { lie, strang };

struct SolverConfig {
  double epsilon = 0.5;
  double dt = 0.05;
  double t_final = 1.0;
  SplittingOrder order = SplittingOrder::lie;
  int characteristic_substeps = 4;
  int snapshot_stride = 1;

  /// Throws ConfigError on epsilon <= 0, dt <= 0, t_final < 0, substeps or
  /// stride < 1, or t_final/dt not an integer (1e-9 relative).
  void validate() const;
  /// N = t_final/dt after validation.
  std::size_t step_count() const;
};

/// Row-major complex 2x2 matrix.
struct Matrix2 {
  Complex m00, m01, m10, m11;
};

/// Step operators for time-independent fields, built once per (dt, epsilon).
struct Propagators {
  double dt = 0.0;
  double epsilon = 0.0;
  std::vector<Complex> potential_phase1;  ///< exp(dt*B1) per grid point
  std::vector<Complex> potential_phase2;  ///< exp(dt*B2) per grid point
  std::vector<Complex> kinetic_phase;     ///< exp(dt*A) per spectral slot
  std::vector<Matrix2> coupling;          ///< exp(dt*D) per grid point
  std::vector<Vec3> departure_points;     ///< backward-traced characteristic feet
  /// Every departure point coincides with its grid point, so the advection
  /// step reduces to an inverse DFT.
  bool identity_transport = false;
};

/// Propagators for the symmetric composition: half-step potential, kinetic
/// and advection operators plus full-step coupling matrices.
struct StrangPropagators {
  Propagators half;
  std::vector<Matrix2> full_coupling;
};

/// exp(dt*M) for M = [[0, d1], [d2, 0]], d1 = i*b1/2 + b2/2,
/// d2 = i*b1/2 - b2/2. Since d1*d2 = -rho^2 with rho = |(b1,b2)|/2, the
/// series collapses to cos(rho*dt) I + sin(rho*dt)/rho M.
Matrix2 coupling_matrix_closed_form(double b1, double b2, double dt);

/// Departure points z_j(t_n) of dz/dt = -A(z), z(t_{n+1}) = x_j, integrated
/// backward over one step with `substeps` classical RK4 steps.
std::vector<Vec3> trace_characteristics(const EMFields& fields, const Grid& grid, double dt,
                                        int substeps);
std::vector<Vec3> trace_characteristics(const EMFields& fields, const Grid& grid,
                                        const SolverConfig& config);

/// Builds all step operators for step size dt.
Propagators precompute_propagators(const EMFields& fields, const FieldSamples& samples,
                                   const Grid& grid, double epsilon, double dt, int substeps);
Propagators precompute_propagators(const EMFields& fields, const FieldSamples& samples,
                                   const Grid& grid, const SolverConfig& config);
StrangPropagators precompute_strang_propagators(const EMFields& fields,
                                                const FieldSamples& samples, const Grid& grid,
                                                const SolverConfig& config);

/// (i) Pointwise phases in physical space.
SpinorField potential_step(const SpinorField& state, const Propagators& prop);
/// (ii) Free Schroedinger flow in Fourier space; the result stays spectral.
SpinorField kinetic_step(const SpinorField& state, const Propagators& prop, const Grid& grid);
/// (iii) Semi-Lagrangian transport: evaluates the trigonometric interpolant
/// of the spectral input at the departure points. Physical output.
SpinorField advection_step(const SpinorField& state, const Propagators& prop, const Grid& grid);
/// (iv) Pointwise 2x2 spin coupling in physical space.
SpinorField coupling_step(const SpinorField& state, const Propagators& prop);
SpinorField coupling_step(const SpinorField& state, std::span<const Matrix2> matrices);

/// exp(dt D) exp(dt C) exp(dt A) exp(dt B) U, applied as (i) -> (iv).
SpinorField lie_step(const SpinorField& state, const Propagators& prop, const Grid& grid);
/// Palindrome B/2 A/2 C/2 D C/2 A/2 B/2 around the coupling step.
SpinorField strang_step(const SpinorField& state, const StrangPropagators& props,
                        const Grid& grid);

/// Receives per-step diagnostics and periodic snapshots from evolve().
struct EvolveObserver {
  /// Called after every step n = 1..N with the diagnostics at t_n.
  std::function<void(const SeriesRecord&)> on_record;
  /// Called at step 0 and at every multiple of snapshot_stride.
  std::function<void(std::size_t step, double time, const SpinorField&)> on_snapshot;
};

/// Runs N = T/dt steps of the configured composition from state0.
/// Throws DivergenceError with the step index if the state becomes
/// non-finite.
SpinorField evolve(const SpinorField& state0, const EMFields& fields, const Grid& grid,
                   const SolverConfig& config, const EvolveObserver& observer = {});

}  // namespace pauli
