#include "pauli/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pauli/errors.hpp"

namespace pauli {

namespace {

// The FFTW planner is not re-entrant; execution with fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void check_shape(const ComplexField& f, const Grid& g, const char* op) {
  if (f.counts != g.counts() || f.values.size() != g.size()) {
    throw InvalidArgument(std::string(op) + ": field shape does not match grid");
  }
}

}  // namespace

int requested_threads() {
  const char* env = std::getenv("PAULI_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const int n = std::atoi(env);
  return n > 0 ? n : 0;
}

void apply_thread_limit() {
#ifdef _OPENMP
  if (const int n = requested_threads(); n > 0) omp_set_num_threads(n);
#endif
}

namespace detail {

class FftPlans {
 public:
  explicit FftPlans(const Index3& counts) {
    std::vector<Complex> scratch(counts[0] * counts[1] * counts[2]);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int n3 = static_cast<int>(counts[2]);
    const int n2 = static_cast<int>(counts[1]);
    const int n1 = static_cast<int>(counts[0]);
    std::lock_guard lock(planner_mutex());
    // Row-major with the last dimension fastest, so x1 goes last.
    forward_ = fftw_plan_dft_3d(n3, n2, n1, buf, buf, FFTW_FORWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    backward_ = fftw_plan_dft_3d(n3, n2, n1, buf, buf, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  void forward(std::span<Complex> data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(forward_, p, p);
  }
  void backward(std::span<Complex> data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(backward_, p, p);
  }

 private:
  fftw_plan forward_{};
  fftw_plan backward_{};
};

}  // namespace detail

Grid::Grid(const Vec3& lengths, const std::array<int, 3>& counts) : lengths_(lengths) {
  for (int axis = 0; axis < 3; ++axis) {
    if (!(lengths[axis] > 0.0) || !std::isfinite(lengths[axis])) {
      throw InvalidArgument("grid: length on axis " + std::to_string(axis + 1) +
                            " must be positive and finite");
    }
    if (counts[axis] < 2) {
      throw InvalidArgument("grid: count on axis " + std::to_string(axis + 1) +
                            " must be at least 2");
    }
    counts_[axis] = static_cast<std::size_t>(counts[axis]);
    spacings_[axis] = lengths[axis] / counts[axis];

    const std::size_t n = counts_[axis];
    const std::size_t positive = (n + 1) / 2;
    wavenumbers_[axis].resize(n);
    angular_[axis].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const int k = j < positive ? static_cast<int>(j) : static_cast<int>(j) - static_cast<int>(n);
      wavenumbers_[axis][j] = k;
      angular_[axis][j] = 2.0 * std::numbers::pi * k / lengths[axis];
    }
  }
  plans_ = std::make_shared<const detail::FftPlans>(counts_);
}

Grid build_grid(const Vec3& lengths, const std::array<int, 3>& counts) {
  return Grid(lengths, counts);
}

double Grid::mesh_size() const noexcept {
  return std::sqrt(spacings_[0] * spacings_[0] + spacings_[1] * spacings_[1] +
                   spacings_[2] * spacings_[2]);
}

Index3 Grid::multi_index(std::size_t flat) const noexcept {
  const std::size_t j1 = flat % counts_[0];
  flat /= counts_[0];
  const std::size_t j2 = flat % counts_[1];
  return {j1, j2, flat / counts_[1]};
}

Vec3 Grid::point(std::size_t flat) const noexcept {
  const Index3 j = multi_index(flat);
  return {static_cast<double>(j[0]) * lengths_[0] / static_cast<double>(counts_[0]),
          static_cast<double>(j[1]) * lengths_[1] / static_cast<double>(counts_[1]),
          static_cast<double>(j[2]) * lengths_[2] / static_cast<double>(counts_[2])};
}

void Grid::forward(std::span<Complex> data) const {
  if (data.size() != size()) throw InvalidArgument("forward: size does not match grid");
  plans_->forward(data);
  const double scale = 1.0 / static_cast<double>(size());
  for (auto& v : data) v *= scale;
}

void Grid::inverse(std::span<Complex> data) const {
  if (data.size() != size()) throw InvalidArgument("inverse: size does not match grid");
  plans_->backward(data);
}

ComplexField ComplexField::zeros(const Grid& grid, Representation rep) {
  return ComplexField{grid.counts(), std::vector<Complex>(grid.size()), rep};
}

ComplexField forward_dft(const ComplexField& field, const Grid& grid) {
  check_shape(field, grid, "forward_dft");
  if (field.representation != Representation::physical) {
    throw InvalidArgument("forward_dft: input must be in physical representation");
  }
  ComplexField out = field;
  grid.forward(out.values);
  out.representation = Representation::spectral;
  return out;
}

ComplexField inverse_dft(const ComplexField& field, const Grid& grid) {
  check_shape(field, grid, "inverse_dft");
  if (field.representation != Representation::spectral) {
    throw InvalidArgument("inverse_dft: input must be in spectral representation");
  }
  ComplexField out = field;
  grid.inverse(out.values);
  out.representation = Representation::physical;
  return out;
}

namespace {

// Multiplies spectral data by i*omega_axis, with the Nyquist slot dropped.
void apply_derivative(std::span<Complex> spectral, const Grid& grid, int axis) {
  const Index3& n = grid.counts();
  for (std::size_t j3 = 0; j3 < n[2]; ++j3) {
    for (std::size_t j2 = 0; j2 < n[1]; ++j2) {
      for (std::size_t j1 = 0; j1 < n[0]; ++j1) {
        const std::size_t slot = axis == 0 ? j1 : (axis == 1 ? j2 : j3);
        const double w = grid.is_nyquist(axis, slot) ? 0.0 : grid.angular_frequency(axis, slot);
        auto& c = spectral[grid.index(j1, j2, j3)];
        c = Complex(-w * c.imag(), w * c.real());
      }
    }
  }
}

ComplexField to_spectral(const ComplexField& f, const Grid& grid) {
  return f.representation == Representation::spectral ? f : forward_dft(f, grid);
}

ComplexField derivative(const ComplexField& spectral, const Grid& grid, int axis) {
  ComplexField d = spectral;
  apply_derivative(d.values, grid, axis);
  return d;
}

void add_scaled(ComplexField& acc, const ComplexField& term, double sign) {
  for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += sign * term.values[i];
}

}  // namespace

std::vector<ComplexField> spectral_derivative(std::span<const ComplexField> components,
                                              const Grid& grid, DerivativeKind kind) {
  const std::size_t expected = kind == DerivativeKind::gradient ? 1 : 3;
  if (components.size() != expected) {
    throw InvalidArgument("spectral_derivative: expected " + std::to_string(expected) +
                          " component(s), got " + std::to_string(components.size()));
  }
  const Representation rep = components.front().representation;
  std::vector<ComplexField> spec;
  for (const auto& c : components) {
    check_shape(c, grid, "spectral_derivative");
    if (c.representation != rep) {
      throw InvalidArgument("spectral_derivative: components have mixed representations");
    }
    spec.push_back(to_spectral(c, grid));
  }

  std::vector<ComplexField> out;
  switch (kind) {
    case DerivativeKind::gradient:
      for (int axis = 0; axis < 3; ++axis) out.push_back(derivative(spec[0], grid, axis));
      break;
    case DerivativeKind::divergence: {
      ComplexField acc = derivative(spec[0], grid, 0);
      add_scaled(acc, derivative(spec[1], grid, 1), 1.0);
      add_scaled(acc, derivative(spec[2], grid, 2), 1.0);
      out.push_back(std::move(acc));
      break;
    }
    case DerivativeKind::curl:
      for (int axis = 0; axis < 3; ++axis) {
        // (curl v)_a = d_b v_c - d_c v_b for cyclic (a, b, c).
        const int b = (axis + 1) % 3;
        const int c = (axis + 2) % 3;
        ComplexField acc = derivative(spec[c], grid, b);
        add_scaled(acc, derivative(spec[b], grid, c), -1.0);
        out.push_back(std::move(acc));
      }
      break;
  }
  if (rep == Representation::physical) {
    for (auto& f : out) f = inverse_dft(f, grid);
  }
  return out;
}

namespace {

ComplexField complexify(const RealField& f, const Grid& grid) {
  if (f.size() != grid.size()) throw InvalidArgument("real field size does not match grid");
  ComplexField c = ComplexField::zeros(grid);
  for (std::size_t i = 0; i < f.size(); ++i) c.values[i] = f[i];
  return c;
}

RealField real_part(const ComplexField& c) {
  RealField r(c.values.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = c.values[i].real();
  return r;
}

std::vector<ComplexField> complexify(const VectorField& v, const Grid& grid) {
  return {complexify(v[0], grid), complexify(v[1], grid), complexify(v[2], grid)};
}

}  // namespace

VectorField gradient(const RealField& f, const Grid& grid) {
  const ComplexField c = complexify(f, grid);
  auto d = spectral_derivative(std::span(&c, 1), grid, DerivativeKind::gradient);
  return {real_part(d[0]), real_part(d[1]), real_part(d[2])};
}

RealField divergence(const VectorField& v, const Grid& grid) {
  auto d = spectral_derivative(complexify(v, grid), grid, DerivativeKind::divergence);
  return real_part(d[0]);
}

VectorField curl(const VectorField& v, const Grid& grid) {
  auto d = spectral_derivative(complexify(v, grid), grid, DerivativeKind::curl);
  return {real_part(d[0]), real_part(d[1]), real_part(d[2])};
}

namespace detail {

void interpolate_components(std::span<const Complex* const> coefficients,
                            std::span<const Vec3> points, const Grid& grid,
                            std::span<Complex* const> out) {
  if (coefficients.size() != out.size()) {
    throw InvalidArgument("interpolate: coefficient/output count mismatch");
  }
  for (const auto& p : points) {
    for (double x : p) {
      if (!std::isfinite(x)) throw InvalidArgument("trig_interpolate: non-finite point coordinate");
    }
  }

  const Index3 n = grid.counts();
  const std::size_t total = grid.size();
  const std::size_t ncomp = coefficients.size();

  // Split real/imaginary storage keeps the innermost loop free of
  // std::complex multiplication (which must honor Annex G semantics).
  std::vector<double> re(ncomp * total);
  std::vector<double> im(ncomp * total);
  for (std::size_t c = 0; c < ncomp; ++c) {
    for (std::size_t i = 0; i < total; ++i) {
      re[c * total + i] = coefficients[c][i].real();
      im[c * total + i] = coefficients[c][i].imag();
    }
  }

  const auto npoints = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel
  {
    std::array<std::vector<double>, 3> er;
    std::array<std::vector<double>, 3> ei;
    for (int a = 0; a < 3; ++a) {
      er[a].resize(n[a]);
      ei[a].resize(n[a]);
    }

#pragma omp for schedule(static)
    for (std::ptrdiff_t p = 0; p < npoints; ++p) {
      for (int a = 0; a < 3; ++a) {
        const double len = grid.lengths()[a];
        double x = std::fmod(points[p][a], len);
        if (x < 0.0) x += len;
        for (std::size_t s = 0; s < n[a]; ++s) {
          if (grid.is_nyquist(a, s)) {
            er[a][s] = std::cos(std::numbers::pi * static_cast<double>(n[a]) * x / len);
            ei[a][s] = 0.0;
          } else {
            const double phase = grid.angular_frequency(a, s) * x;
            er[a][s] = std::cos(phase);
            ei[a][s] = std::sin(phase);
          }
        }
      }

      for (std::size_t c = 0; c < ncomp; ++c) {
        const double* cr = re.data() + c * total;
        const double* ci = im.data() + c * total;
        double sum_r = 0.0;
        double sum_i = 0.0;
        for (std::size_t s3 = 0; s3 < n[2]; ++s3) {
          double plane_r = 0.0;
          double plane_i = 0.0;
          for (std::size_t s2 = 0; s2 < n[1]; ++s2) {
            const std::size_t row = n[0] * (s2 + n[1] * s3);
            const double* rr = cr + row;
            const double* ri = ci + row;
            const double* xr = er[0].data();
            const double* xi = ei[0].data();
            double line_r = 0.0;
            double line_i = 0.0;
            for (std::size_t s1 = 0; s1 < n[0]; ++s1) {
              line_r += xr[s1] * rr[s1] - xi[s1] * ri[s1];
              line_i += xr[s1] * ri[s1] + xi[s1] * rr[s1];
            }
            plane_r += er[1][s2] * line_r - ei[1][s2] * line_i;
            plane_i += er[1][s2] * line_i + ei[1][s2] * line_r;
          }
          sum_r += er[2][s3] * plane_r - ei[2][s3] * plane_i;
          sum_i += er[2][s3] * plane_i + ei[2][s3] * plane_r;
        }
        out[c][p] = Complex(sum_r, sum_i);
      }
    }
  }
}

}  // namespace detail

std::vector<Complex> trig_interpolate(const ComplexField& spectral,
                                      std::span<const Vec3> points, const Grid& grid) {
  check_shape(spectral, grid, "trig_interpolate");
  if (spectral.representation != Representation::spectral) {
    throw InvalidArgument("trig_interpolate: input must be in spectral representation");
  }
  std::vector<Complex> out(points.size());
  const Complex* in[] = {spectral.values.data()};
  Complex* dst[] = {out.data()};
  detail::interpolate_components(in, points, grid, dst);
  return out;
}

double sum_abs2(std::span<const Complex> v) {
  return pairwise_sum(v.size(), [&](std::size_t i) { return std::norm(v[i]); });
}

}  // namespace pauli
