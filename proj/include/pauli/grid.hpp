#pragma once

#include <memory>
#include <span>
#include <vector>

#include "pauli/numeric.hpp"

namespace pauli {

enum class Representation { physical, spectral };

namespace detail {
class FftPlans;
}

/// Periodic box [0,L1]x[0,L2]x[0,L3] sampled at N1xN2xN3 points.
///
/// Flat storage is x1-fastest: index(j1,j2,j3) = j1 + N1*(j2 + N2*j3).
/// Spectral data uses the same layout; slot j on axis l holds integer
/// wavenumber k = j for j < ceil(N/2) and k = j - N otherwise, i.e. the
/// symmetric set {-floor(N/2), ..., ceil(N/2)-1}.
///
/// Copies share the (immutable) FFT plans.
class Grid {
 public:
  Grid(const Vec3& lengths, const std::array<int, 3>& counts);

  const Vec3& lengths() const noexcept { return lengths_; }
  const Index3& counts() const noexcept { return counts_; }
  const Vec3& spacings() const noexcept { return spacings_; }

  std::size_t size() const noexcept { return counts_[0] * counts_[1] * counts_[2]; }
  /// Quadrature weight dx1*dx2*dx3.
  double cell_volume() const noexcept { return spacings_[0] * spacings_[1] * spacings_[2]; }
  /// Euclidean length of (dx1, dx2, dx3).
  double mesh_size() const noexcept;

  std::size_t index(std::size_t j1, std::size_t j2, std::size_t j3) const noexcept {
    return j1 + counts_[0] * (j2 + counts_[1] * j3);
  }
  Index3 multi_index(std::size_t flat) const noexcept;
  Vec3 point(std::size_t flat) const noexcept;

  /// Integer wavenumbers of the slots along an axis, in storage order.
  const std::vector<int>& wavenumbers(int axis) const { return wavenumbers_.at(axis); }
  /// 2*pi*k/L for slot j on an axis.
  double angular_frequency(int axis, std::size_t slot) const {
    return angular_.at(axis)[slot];
  }
  /// True when slot holds the unpaired -N/2 mode of an even axis.
  bool is_nyquist(int axis, std::size_t slot) const noexcept {
    return counts_[axis] % 2 == 0 && slot == counts_[axis] / 2;
  }

  /// In-place transforms of one flat component. forward() applies the
  /// 1/(N1N2N3) normalization; inverse() is its exact inverse.
  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

 private:
  Vec3 lengths_;
  Index3 counts_;
  Vec3 spacings_;
  std::array<std::vector<int>, 3> wavenumbers_;
  std::array<std::vector<double>, 3> angular_;
  std::shared_ptr<const detail::FftPlans> plans_;
};

/// Validates and builds a grid; throws InvalidArgument naming the axis.
Grid build_grid(const Vec3& lengths, const std::array<int, 3>& counts);

/// One complex scalar on the grid, tagged with its representation.
struct ComplexField {
  Index3 counts{};
  std::vector<Complex> values;
  Representation representation = Representation::physical;

  static ComplexField zeros(const Grid& grid, Representation rep = Representation::physical);
};

ComplexField forward_dft(const ComplexField& field, const Grid& grid);
ComplexField inverse_dft(const ComplexField& field, const Grid& grid);

enum class DerivativeKind { gradient, divergence, curl };

/// Spectral first derivatives. Gradient takes one component and returns
/// three; divergence takes three and returns one; curl maps three to three.
/// Output representation matches the input. The Nyquist mode of even axes
/// is dropped from the multiplier.
std::vector<ComplexField> spectral_derivative(std::span<const ComplexField> components,
                                              const Grid& grid, DerivativeKind kind);

/// Real-valued convenience wrappers over spectral_derivative.
VectorField gradient(const RealField& f, const Grid& grid);
RealField divergence(const VectorField& v, const Grid& grid);
VectorField curl(const VectorField& v, const Grid& grid);

/// Evaluates the symmetric trigonometric interpolant of spectral data at
/// arbitrary points (wrapped into the box). On even axes the Nyquist mode
/// contributes cos(pi*N*x/L), which keeps real grid data real.
std::vector<Complex> trig_interpolate(const ComplexField& spectral,
                                      std::span<const Vec3> points, const Grid& grid);

namespace detail {

/// Batched interpolation: evaluates every coefficient array at every point,
/// sharing the per-point exponential tables between components.
void interpolate_components(std::span<const Complex* const> coefficients,
                            std::span<const Vec3> points, const Grid& grid,
                            std::span<Complex* const> out);

}  // namespace detail

/// sum_j |v_j|^2 with deterministic pairwise summation.
double sum_abs2(std::span<const Complex> v);

}  // namespace pauli
