#pragma once

#include <string>
#include <utility>

#include "pauli/grid.hpp"

namespace pauli {

/// Discrete 2-spinor (u1, u2) on a grid. Both components share shape and
/// representation.
struct SpinorField {
  Index3 counts{};
  std::vector<Complex> u1;
  std::vector<Complex> u2;
  Representation representation = Representation::physical;

  static SpinorField zeros(const Grid& grid, Representation rep = Representation::physical);

  std::size_t size() const noexcept { return u1.size(); }
  std::vector<Complex>& component(int i) { return i == 0 ? u1 : u2; }
  const std::vector<Complex>& component(int i) const { return i == 0 ? u1 : u2; }
};

/// u1 = exp(-|x - (4.5,4.5,5)|^2), u2 = exp(-|x - (5.5,5.5,5)|^2).
SpinorField initial_state_gaussian_pair(const Grid& grid);
/// u1 as above, u2 = 0.
SpinorField initial_state_spin_up(const Grid& grid);
/// "gaussian-pair" or "spin-up"; throws ConfigError otherwise.
SpinorField initial_preset(const std::string& name, const Grid& grid);

/// Returns a copy with both components in the requested representation.
SpinorField to_representation(const SpinorField& state, const Grid& grid, Representation rep);

/// Per-component discrete l2 norms (not squared). Spectral input is handled
/// through Parseval.
std::pair<double, double> component_l2(const SpinorField& state, const Grid& grid);

/// ||U1|| + ||U2||.
double alpha_norm(const SpinorField& state, const Grid& grid);

/// True when every value of both components is finite.
bool all_finite(const SpinorField& state);

/// Throws InvalidArgument unless the state matches the grid shape.
void check_state(const SpinorField& state, const Grid& grid, const char* op);

}  // namespace pauli
