#pragma once

#include <optional>

#include <Eigen/Dense>

#include "pauli/splitting.hpp"

namespace pauli {

/// Largest stacked dimension 2*N1*N2*N3 the dense oracle accepts (12^3 grid).
inline constexpr std::size_t kMaxOracleDimension = 4096;

/// Full discrete generator G of du/dt = G u acting on the stacked vector
/// (u1 at all grid points, then u2), with spectral differentiation.
struct DenseGenerator {
  Eigen::MatrixXcd matrix;
  Index3 counts{};
  double epsilon = 0.0;
};

/// Blocks: kinetic (i eps/2) Lap, advection sum_l diag(A_l) D_l, potential
/// diag(-i/eps (|A|^2/2 + phi -+ eps B3/2)), coupling diag(D1), diag(D2).
/// Differentiation matrices are built directly from the 1-D trigonometric
/// basis, independently of the FFT path. Throws InvalidArgument when the
/// dimension exceeds kMaxOracleDimension.
DenseGenerator assemble_generator(const FieldSamples& samples, const Grid& grid, double epsilon);

/// max |(G + G^H)_{ij}|; zero for an exactly anti-Hermitian generator.
double anti_hermitian_residual(const DenseGenerator& gen);

/// exp(t G) u by scaling and squaring with a Pade core.
SpinorField exact_evolve(const SpinorField& state, const DenseGenerator& gen, double t);

struct ConvergenceRow {
  double dt = 0.0;
  double alpha_error = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  std::optional<double> slope;  ///< least-squares log-log slope, needs >= 2 rows
};

/// Compares the splitting scheme with exp(T G) u0 for every dt in dt_list.
ConvergenceTable convergence_study(const SpinorField& state0, const EMFields& fields,
                                   const Grid& grid, double epsilon,
                                   std::span<const double> dt_list, double t_final,
                                   SplittingOrder order, int characteristic_substeps = 4);

/// Least-squares slope of log(y) against log(x); empty for fewer than two
/// points or non-positive data.
std::optional<double> fit_loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace pauli
