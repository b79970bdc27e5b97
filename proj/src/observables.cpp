#include "pauli/observables.hpp"

#include <algorithm>
#include <cmath>

#include "pauli/errors.hpp"

namespace pauli {

namespace {

void require_physical(const SpinorField& s, const char* op) {
  if (s.representation != Representation::physical) {
    throw StateError(std::string(op) + ": state must be in physical representation");
  }
}

void check_samples(const FieldSamples& samples, const Grid& grid, const char* op) {
  if (samples.counts != grid.counts()) {
    throw InvalidArgument(std::string(op) + ": field samples do not match grid");
  }
}

std::vector<ComplexField> complex_gradient(const std::vector<Complex>& u, const Grid& grid) {
  const ComplexField f{grid.counts(), u, Representation::physical};
  return spectral_derivative(std::span(&f, 1), grid, DerivativeKind::gradient);
}

}  // namespace

RealField density(const SpinorField& state) {
  require_physical(state, "density");
  RealField n(state.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = std::norm(state.u1[i]) + std::norm(state.u2[i]);
  return n;
}

VectorField current_density(const SpinorField& state, const FieldSamples& samples,
                            const Grid& grid, double epsilon) {
  require_physical(state, "current_density");
  check_state(state, grid, "current_density");
  check_samples(samples, grid, "current_density");
  const std::size_t n = grid.size();

  VectorField j;
  for (auto& c : j) c.assign(n, 0.0);

  for (int comp = 0; comp < 2; ++comp) {
    const auto& u = state.component(comp);
    const auto grad = complex_gradient(u, grid);
    for (int a = 0; a < 3; ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        j[a][i] += epsilon * (std::conj(u[i]) * grad[a].values[i]).imag();
      }
    }
  }

  // Spin density s_k = conj(u) sigma_k u.
  VectorField spin;
  for (auto& c : spin) c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex z = std::conj(state.u1[i]) * state.u2[i];
    spin[0][i] = 2.0 * z.real();
    spin[1][i] = 2.0 * z.imag();
    spin[2][i] = std::norm(state.u1[i]) - std::norm(state.u2[i]);
  }
  const VectorField spin_curl = curl(spin, grid);
  const RealField rho = density(state);

  for (int a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      j[a][i] += -rho[i] * samples.a[a][i] - 0.5 * epsilon * spin_curl[a][i];
    }
  }
  return j;
}

double total_mass(const SpinorField& state, const Grid& grid) {
  require_physical(state, "total_mass");
  check_state(state, grid, "total_mass");
  return grid.cell_volume() * pairwise_sum(state.size(), [&](std::size_t i) {
           return std::norm(state.u1[i]) + std::norm(state.u2[i]);
         });
}

double total_energy(const SpinorField& state, const FieldSamples& samples, const Grid& grid,
                    double epsilon) {
  require_physical(state, "total_energy");
  check_state(state, grid, "total_energy");
  check_samples(samples, grid, "total_energy");
  const std::size_t n = grid.size();

  // Pointwise energy density accumulated first, then reduced once.
  std::vector<double> e(n, 0.0);
  for (int comp = 0; comp < 2; ++comp) {
    const auto& u = state.component(comp);
    const auto grad = complex_gradient(u, grid);
    for (int a = 0; a < 3; ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        // (-i eps d_a - A_a) u
        const Complex v = Complex(0.0, -epsilon) * grad[a].values[i] - samples.a[a][i] * u[i];
        e[i] += 0.5 * std::norm(v);
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Complex u1 = state.u1[i];
    const Complex u2 = state.u2[i];
    const double n1 = std::norm(u1);
    const double n2 = std::norm(u2);
    const double b1 = samples.b[0][i];
    const double b2 = samples.b[1][i];
    const double b3 = samples.b[2][i];
    // conj(u)^T (sigma.B) u
    const double spin = b3 * (n1 - n2) + 2.0 * (std::conj(u1) * Complex(b1, -b2) * u2).real();
    e[i] += samples.phi[i] * (n1 + n2) - 0.5 * epsilon * spin;
  }
  return grid.cell_volume() * pairwise_sum(n, [&](std::size_t i) { return e[i]; });
}

ErrorMetrics state_error(const SpinorField& a, const SpinorField& b, const Grid& grid) {
  check_state(a, grid, "state_error");
  check_state(b, grid, "state_error");
  require_physical(a, "state_error");
  require_physical(b, "state_error");

  ErrorMetrics m;
  double max_ref = 0.0;
  SpinorField diff = SpinorField::zeros(grid);
  for (int c = 0; c < 2; ++c) {
    const auto& x = a.component(c);
    const auto& y = b.component(c);
    auto& d = diff.component(c);
    for (std::size_t i = 0; i < x.size(); ++i) {
      d[i] = x[i] - y[i];
      m.max_abs = std::max(m.max_abs, std::abs(d[i]));
      max_ref = std::max(max_ref, std::abs(y[i]));
    }
  }
  m.rel = max_ref > 0.0 ? m.max_abs / max_ref : (m.max_abs > 0.0 ? INFINITY : 0.0);
  m.alpha_diff = alpha_norm(diff, grid);
  return m;
}

double continuity_residual(const SpinorField& before, const SpinorField& after,
                           const FieldSamples& samples, const Grid& grid, double epsilon,
                           double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("continuity_residual: dt must be positive");
  check_state(before, grid, "continuity_residual");
  check_state(after, grid, "continuity_residual");
  const RealField n0 = density(before);
  const RealField n1 = density(after);

  SpinorField mid = SpinorField::zeros(grid);
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      mid.component(c)[i] = 0.5 * (before.component(c)[i] + after.component(c)[i]);
    }
  }
  const RealField div_j = divergence(current_density(mid, samples, grid, epsilon), grid);
  const double sum = pairwise_sum(grid.size(), [&](std::size_t i) {
    const double r = (n1[i] - n0[i]) / dt + div_j[i];
    return r * r;
  });
  return std::sqrt(grid.cell_volume() * sum);
}

SeriesRecord make_record(double time, const SpinorField& state, const FieldSamples& samples,
                         const Grid& grid, double epsilon) {
  SeriesRecord r;
  r.time = time;
  const auto [l1, l2] = component_l2(state, grid);
  r.l2_u1 = l1;
  r.l2_u2 = l2;
  r.alpha = l1 + l2;
  r.mass = total_mass(state, grid);
  r.energy = total_energy(state, samples, grid, epsilon);
  return r;
}

}  // namespace pauli
