#pragma once

#include "pauli/fields.hpp"
#include "pauli/state.hpp"

namespace pauli {

/// One row of the per-step time series.
struct SeriesRecord {
  double time = 0.0;
  double mass = 0.0;
  double l2_u1 = 0.0;
  double l2_u2 = 0.0;
  double alpha = 0.0;
  double energy = 0.0;
};

/// n = |u1|^2 + |u2|^2 per grid point.
RealField density(const SpinorField& state);

/// Pauli current in scaled variables,
///   J = eps * Im(conj(u) . grad u) - n A - (eps/2) curl(conj(u) sigma u),
/// with spectral gradients.
VectorField current_density(const SpinorField& state, const FieldSamples& samples,
                            const Grid& grid, double epsilon);

/// dV * sum_j n(x_j) = ||U1||^2 + ||U2||^2.
double total_mass(const SpinorField& state, const Grid& grid);

/// E = 1/2 int |(-i eps grad - A) u|^2 + int phi n - (eps/2) int (sigma.B) u . conj(u),
/// by grid quadrature with spectral gradients.
double total_energy(const SpinorField& state, const FieldSamples& samples, const Grid& grid,
                    double epsilon);

struct ErrorMetrics {
  double max_abs = 0.0;     ///< max over points and components of |a - b|
  double rel = 0.0;         ///< max_abs / max |b|
  double alpha_diff = 0.0;  ///< ||a - b||_alpha
};

ErrorMetrics state_error(const SpinorField& a, const SpinorField& b, const Grid& grid);

/// Discrete l2 norm of (n(after) - n(before))/dt + div J, with J evaluated
/// from the time-averaged state (before + after)/2.
double continuity_residual(const SpinorField& before, const SpinorField& after,
                           const FieldSamples& samples, const Grid& grid, double epsilon,
                           double dt);

SeriesRecord make_record(double time, const SpinorField& state, const FieldSamples& samples,
                         const Grid& grid, double epsilon);

}  // namespace pauli
