#include "pauli/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

#include "pauli/errors.hpp"

namespace pauli {

namespace {

// 1-D spectral differentiation matrices on N points of a period-L axis:
// entry (j, m) = (1/N) sum_k mult(k) exp(2 pi i k (j - m) / N).
Eigen::MatrixXcd derivative_matrix_1d(int n, double length, int order) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  const int lowest = -(n / 2);
  for (int k = lowest; k < lowest + n; ++k) {
    const double w = 2.0 * std::numbers::pi * k / length;
    Complex mult;
    if (order == 1) {
      mult = (n % 2 == 0 && k == lowest) ? Complex(0.0) : Complex(0.0, w);
    } else {
      mult = -w * w;
    }
    for (int j = 0; j < n; ++j) {
      for (int m = 0; m < n; ++m) {
        d(j, m) += mult * std::polar(1.0, 2.0 * std::numbers::pi * k * (j - m) / n) /
                   static_cast<double>(n);
      }
    }
  }
  return d;
}

Eigen::VectorXcd stack(const SpinorField& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::VectorXcd v(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = s.u1[i];
    v(n + i) = s.u2[i];
  }
  return v;
}

SpinorField unstack(const Eigen::VectorXcd& v, const Index3& counts) {
  const auto n = v.size() / 2;
  SpinorField s;
  s.counts = counts;
  s.u1.resize(n);
  s.u2.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    s.u1[i] = v(i);
    s.u2[i] = v(n + i);
  }
  return s;
}

}  // namespace

DenseGenerator assemble_generator(const FieldSamples& samples, const Grid& grid, double epsilon) {
  if (samples.counts != grid.counts()) {
    throw InvalidArgument("assemble_generator: field samples do not match grid");
  }
  const std::size_t n = grid.size();
  if (2 * n > kMaxOracleDimension) {
    throw InvalidArgument("assemble_generator: dimension " + std::to_string(2 * n) +
                          " exceeds the dense limit of " + std::to_string(kMaxOracleDimension));
  }
  const Index3& counts = grid.counts();
  std::array<Eigen::MatrixXcd, 3> first;
  std::array<Eigen::MatrixXcd, 3> second;
  for (int a = 0; a < 3; ++a) {
    first[a] = derivative_matrix_1d(static_cast<int>(counts[a]), grid.lengths()[a], 1);
    second[a] = derivative_matrix_1d(static_cast<int>(counts[a]), grid.lengths()[a], 2);
  }

  const auto dim = static_cast<Eigen::Index>(2 * n);
  const auto off = static_cast<Eigen::Index>(n);
  DenseGenerator gen{Eigen::MatrixXcd::Zero(dim, dim), counts, epsilon};
  Eigen::MatrixXcd& g = gen.matrix;
  const Complex kinetic(0.0, 0.5 * epsilon);

  for (std::size_t i = 0; i < n; ++i) {
    const Index3 j = grid.multi_index(i);
    for (int a = 0; a < 3; ++a) {
      for (std::size_t s = 0; s < counts[a]; ++s) {
        Index3 js = j;
        js[a] = s;
        const std::size_t m = grid.index(js[0], js[1], js[2]);
        const Complex entry =
            kinetic * second[a](j[a], s) + samples.a[a][i] * first[a](j[a], s);
        g(i, m) += entry;
        g(off + i, off + m) += entry;
      }
    }
    const double a2 = samples.a[0][i] * samples.a[0][i] + samples.a[1][i] * samples.a[1][i] +
                      samples.a[2][i] * samples.a[2][i];
    const double scalar = 0.5 * a2 + samples.phi[i];
    const double zeeman = 0.5 * epsilon * samples.b[2][i];
    g(i, i) += Complex(0.0, -(scalar - zeeman) / epsilon);
    g(off + i, off + i) += Complex(0.0, -(scalar + zeeman) / epsilon);
    g(i, off + i) += Complex(0.5 * samples.b[1][i], 0.5 * samples.b[0][i]);
    g(off + i, i) += Complex(-0.5 * samples.b[1][i], 0.5 * samples.b[0][i]);
  }
  return gen;
}

double anti_hermitian_residual(const DenseGenerator& gen) {
  return (gen.matrix + gen.matrix.adjoint()).cwiseAbs().maxCoeff();
}

SpinorField exact_evolve(const SpinorField& state, const DenseGenerator& gen, double t) {
  if (state.counts != gen.counts ||
      static_cast<Eigen::Index>(2 * state.size()) != gen.matrix.rows()) {
    throw InvalidArgument("exact_evolve: state does not match generator");
  }
  if (state.representation != Representation::physical) {
    throw StateError("exact_evolve: state must be in physical representation");
  }
  if (t == 0.0) return state;
  const Eigen::MatrixXcd propagator = (t * gen.matrix).exp();
  return unstack(propagator * stack(state), gen.counts);
}

ConvergenceTable convergence_study(const SpinorField& state0, const EMFields& fields,
                                   const Grid& grid, double epsilon,
                                   std::span<const double> dt_list, double t_final,
                                   SplittingOrder order, int characteristic_substeps) {
  const FieldSamples samples = sample_fields(fields, grid);
  const DenseGenerator gen = assemble_generator(samples, grid, epsilon);
  const SpinorField physical0 = to_representation(state0, grid, Representation::physical);

  // Validate every step size before the expensive reference.
  std::vector<SolverConfig> configs;
  for (double dt : dt_list) {
    SolverConfig c;
    c.epsilon = epsilon;
    c.dt = dt;
    c.t_final = t_final;
    c.order = order;
    c.characteristic_substeps = characteristic_substeps;
    c.validate();
    configs.push_back(c);
  }

  const SpinorField reference = exact_evolve(physical0, gen, t_final);
  ConvergenceTable table;
  std::vector<double> dts;
  std::vector<double> errs;
  for (const auto& c : configs) {
    const SpinorField approx = evolve(physical0, fields, grid, c);
    const double err = state_error(approx, reference, grid).alpha_diff;
    table.rows.push_back({c.dt, err});
    dts.push_back(c.dt);
    errs.push_back(err);
  }
  table.slope = fit_loglog_slope(dts, errs);
  return table;
}

std::optional<double> fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::nullopt;
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

}  // namespace pauli
