#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "pauli/grid.hpp"
#include "pauli/state.hpp"

namespace test {

using pauli::Complex;
using pauli::Grid;

inline constexpr double kPi = std::numbers::pi;

inline std::vector<Complex> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<Complex> v(n);
  for (auto& x : v) x = Complex(dist(rng), dist(rng));
  return v;
}

inline pauli::ComplexField random_field(const Grid& grid, unsigned seed) {
  pauli::ComplexField f = pauli::ComplexField::zeros(grid);
  f.values = random_values(grid.size(), seed);
  return f;
}

inline pauli::SpinorField random_state(const Grid& grid, unsigned seed) {
  pauli::SpinorField s = pauli::SpinorField::zeros(grid);
  s.u1 = random_values(grid.size(), seed);
  s.u2 = random_values(grid.size(), seed + 1000);
  return s;
}

/// Smooth state built from a handful of low Fourier modes.
inline pauli::SpinorField low_mode_state(const Grid& grid) {
  pauli::SpinorField s = pauli::SpinorField::zeros(grid);
  const auto& L = grid.lengths();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto x = grid.point(i);
    const double a = 2.0 * kPi * x[0] / L[0];
    const double b = 2.0 * kPi * x[1] / L[1];
    const double c = 2.0 * kPi * x[2] / L[2];
    s.u1[i] = Complex(1.0 + 0.5 * std::cos(a) + 0.3 * std::sin(b), 0.2 * std::cos(c));
    s.u2[i] = Complex(0.4 * std::sin(a + b), 0.7 * std::cos(b));
  }
  return s;
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<Complex>& a) {
  double m = 0.0;
  for (const auto& x : a) m = std::max(m, std::abs(x));
  return m;
}

inline double max_abs_diff(const pauli::SpinorField& a, const pauli::SpinorField& b) {
  return std::max(max_abs_diff(a.u1, b.u1), max_abs_diff(a.u2, b.u2));
}

inline double l2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

/// Signed integer wavenumber of storage slot j on an axis with n points.
inline int wavenumber(std::size_t j, std::size_t n) {
  const auto half = static_cast<std::size_t>((n + 1) / 2);
  return j < half ? static_cast<int>(j) : static_cast<int>(j) - static_cast<int>(n);
}

}  // namespace test
