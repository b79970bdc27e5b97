#include "pauli/state.hpp"

#include <algorithm>
#include <cmath>

#include "pauli/errors.hpp"

namespace pauli {

namespace {

double gaussian(const Vec3& x, const Vec3& center) {
  double r2 = 0.0;
  for (int a = 0; a < 3; ++a) r2 += (x[a] - center[a]) * (x[a] - center[a]);
  return std::exp(-r2);
}

constexpr Vec3 kUpCenter{4.5, 4.5, 5.0};
constexpr Vec3 kDownCenter{5.5, 5.5, 5.0};

}  // namespace

SpinorField SpinorField::zeros(const Grid& grid, Representation rep) {
  return SpinorField{grid.counts(), std::vector<Complex>(grid.size()),
                     std::vector<Complex>(grid.size()), rep};
}

SpinorField initial_state_gaussian_pair(const Grid& grid) {
  SpinorField s = SpinorField::zeros(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 x = grid.point(i);
    s.u1[i] = gaussian(x, kUpCenter);
    s.u2[i] = gaussian(x, kDownCenter);
  }
  return s;
}

SpinorField initial_state_spin_up(const Grid& grid) {
  SpinorField s = SpinorField::zeros(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) s.u1[i] = gaussian(grid.point(i), kUpCenter);
  return s;
}

SpinorField initial_preset(const std::string& name, const Grid& grid) {
  if (name == "gaussian-pair") return initial_state_gaussian_pair(grid);
  if (name == "spin-up") return initial_state_spin_up(grid);
  throw ConfigError("unknown preset: initial_preset \"" + name + "\"");
}

void check_state(const SpinorField& state, const Grid& grid, const char* op) {
  if (state.counts != grid.counts() || state.u1.size() != grid.size() ||
      state.u2.size() != grid.size()) {
    throw InvalidArgument(std::string(op) + ": state shape does not match grid");
  }
}

SpinorField to_representation(const SpinorField& state, const Grid& grid, Representation rep) {
  check_state(state, grid, "to_representation");
  SpinorField out = state;
  if (state.representation == rep) return out;
  for (int c = 0; c < 2; ++c) {
    if (rep == Representation::spectral) {
      grid.forward(out.component(c));
    } else {
      grid.inverse(out.component(c));
    }
  }
  out.representation = rep;
  return out;
}

std::pair<double, double> component_l2(const SpinorField& state, const Grid& grid) {
  check_state(state, grid, "component_l2");
  // Parseval: sum_j |v_j|^2 = N1N2N3 * sum_k |v^_k|^2 under the forward
  // normalization used by Grid.
  const double weight = state.representation == Representation::physical
                            ? grid.cell_volume()
                            : grid.cell_volume() * static_cast<double>(grid.size());
  return {std::sqrt(weight * sum_abs2(state.u1)), std::sqrt(weight * sum_abs2(state.u2))};
}

double alpha_norm(const SpinorField& state, const Grid& grid) {
  const auto [n1, n2] = component_l2(state, grid);
  return n1 + n2;
}

bool all_finite(const SpinorField& state) {
  auto finite = [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  return std::all_of(state.u1.begin(), state.u1.end(), finite) &&
         std::all_of(state.u2.begin(), state.u2.end(), finite);
}

}  // namespace pauli
