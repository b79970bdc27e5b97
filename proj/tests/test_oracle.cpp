#include <doctest.h>

#include "pauli/errors.hpp"
#include "pauli/oracle.hpp"
#include "support.hpp"

using namespace pauli;
using test::kPi;

namespace {

Eigen::VectorXcd stack(const SpinorField& s) {
  const std::size_t n = s.size();
  Eigen::VectorXcd v(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = s.u1[i];
    v[n + i] = s.u2[i];
  }
  return v;
}

}  // namespace

TEST_CASE("zero-field generator on 2^3 is the kinetic block") {
  const Grid g({1, 1, 1}, {2, 2, 2});
  const DenseGenerator gen = assemble_generator(sample_fields(preset_zero(), g), g, 0.5);
  CHECK(gen.matrix.rows() == 16);
  CHECK(anti_hermitian_residual(gen) < 1e-14);
  CHECK(gen.matrix.block(0, 8, 8, 8).cwiseAbs().maxCoeff() == 0.0);
  CHECK(gen.matrix.block(8, 0, 8, 8).cwiseAbs().maxCoeff() == 0.0);
  CHECK((gen.matrix.block(0, 0, 8, 8) - gen.matrix.block(8, 8, 8, 8)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("generator acts on a plane wave as the analytic symbol") {
  const Grid g({10, 8, 6}, {6, 5, 4});
  const double eps = 0.5;
  const Vec3 a{0.3, -0.2, 0.45};
  const double phi = 0.7;
  const DenseGenerator gen =
      assemble_generator(sample_fields(preset_uniform(a, phi), g), g, eps);
  const std::array<int, 3> m{1, -2, 1};
  SpinorField w = SpinorField::zeros(g);
  Vec3 k;
  for (int c = 0; c < 3; ++c) k[c] = 2.0 * kPi * m[c] / g.lengths()[c];
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 x = g.point(i);
    w.u2[i] = std::polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
  }
  const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
  const double ak = a[0] * k[0] + a[1] * k[1] + a[2] * k[2];
  const double a2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
  const Complex symbol =
      Complex(0.0, -0.5 * eps * k2) + Complex(0.0, ak) + Complex(0.0, -(0.5 * a2 + phi) / eps);
  const Eigen::VectorXcd v = stack(w);
  const Eigen::VectorXcd gv = gen.matrix * v;
  CHECK((gv - symbol * v).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("experiment2 generator on 6^3 is anti-Hermitian with the potential diagonal") {
  const Grid g({10, 10, 10}, {6, 6, 6});
  const double eps = 0.5;
  const FieldSamples s = sample_fields(preset_experiment2(), g);
  const DenseGenerator gen = assemble_generator(s, g, eps);
  CHECK(anti_hermitian_residual(gen) <= 1e-10);

  const DenseGenerator kin = assemble_generator(sample_fields(preset_zero(), g), g, eps);
  const std::size_t n = g.size();
  for (std::size_t j : {std::size_t{0}, std::size_t{37}, n - 1}) {
    const double a2 = s.a[0][j] * s.a[0][j] + s.a[1][j] * s.a[1][j] + s.a[2][j] * s.a[2][j];
    const Complex expect1(0.0, -(0.5 * a2 + s.phi[j] - 0.5 * eps * s.b[2][j]) / eps);
    const Complex expect2(0.0, -(0.5 * a2 + s.phi[j] + 0.5 * eps * s.b[2][j]) / eps);
    CHECK(std::abs(gen.matrix(j, j) - kin.matrix(j, j) - expect1) < 1e-13);
    CHECK(std::abs(gen.matrix(n + j, n + j) - kin.matrix(n + j, n + j) - expect2) < 1e-13);
    CHECK(std::abs(gen.matrix(j, n + j) - Complex(0.5 * s.b[1][j], 0.5 * s.b[0][j])) < 1e-15);
    CHECK(std::abs(gen.matrix(n + j, j) - Complex(-0.5 * s.b[1][j], 0.5 * s.b[0][j])) < 1e-15);
  }
}

TEST_CASE("dense guard") {
  const Grid ok({10, 10, 10}, {12, 12, 14});
  CHECK(2 * ok.size() == 4032);
  const Grid big({10, 10, 10}, {13, 13, 13});
  CHECK_THROWS_WITH_AS(assemble_generator(sample_fields(preset_zero(), big), big, 0.5),
                       doctest::Contains("4096"), InvalidArgument);
  const Grid other({10, 10, 10}, {4, 4, 4});
  CHECK_THROWS_AS(assemble_generator(sample_fields(preset_zero(), other), ok, 0.5),
                  InvalidArgument);
}

TEST_CASE("exact evolution") {
  const Grid g({10, 10, 10}, {6, 6, 6});
  const DenseGenerator gen = assemble_generator(sample_fields(preset_experiment2(), g), g, 0.5);
  const SpinorField u = test::random_state(g, 3);

  CHECK(test::max_abs_diff(exact_evolve(u, gen, 0.0), u) < 1e-15);

  const SpinorField once = exact_evolve(u, gen, 0.5);
  const SpinorField twice = exact_evolve(exact_evolve(u, gen, 0.2), gen, 0.3);
  CHECK(test::max_abs_diff(once, twice) < 1e-10);

  const double before = stack(u).norm();
  CHECK(std::abs(stack(once).norm() - before) / before < 1e-10);

  CHECK_THROWS_AS(exact_evolve(to_representation(u, g, Representation::spectral), gen, 0.1),
                  StateError);
  const Grid h({10, 10, 10}, {4, 4, 4});
  CHECK_THROWS_AS(exact_evolve(SpinorField::zeros(h), gen, 0.1), InvalidArgument);
}

TEST_CASE("zero-field oracle matches the spectral kinetic step") {
  const Grid g({10, 10, 10}, {8, 8, 8});
  const double eps = 0.5, t = 0.4;
  const DenseGenerator gen = assemble_generator(sample_fields(preset_zero(), g), g, eps);
  const SpinorField u = test::random_state(g, 7);
  const Propagators p =
      precompute_propagators(preset_zero(), sample_fields(preset_zero(), g), g, eps, t, 1);
  const SpinorField k = to_representation(kinetic_step(u, p, g), g, Representation::physical);
  CHECK(test::max_abs_diff(exact_evolve(u, gen, t), k) < 1e-11);
}

TEST_CASE("loglog slope fit") {
  const std::vector<double> x{0.1, 0.05, 0.025};
  const std::vector<double> y{3e-2, 7.5e-3, 1.875e-3};
  REQUIRE(fit_loglog_slope(x, y));
  CHECK(*fit_loglog_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(fit_loglog_slope(std::vector<double>{0.1}, std::vector<double>{1.0}));
  CHECK_FALSE(fit_loglog_slope(std::vector<double>{0.1, 0.2}, std::vector<double>{0.0, 1.0}));
}

TEST_CASE("convergence study with a single step size has no slope") {
  const Grid g({10, 10, 10}, {4, 4, 4});
  const std::vector<double> dts{0.1};
  const ConvergenceTable t = convergence_study(initial_state_spin_up(g), preset_experiment2(), g,
                                               0.5, dts, 0.2, SplittingOrder::lie);
  CHECK(t.rows.size() == 1);
  CHECK(t.rows[0].dt == 0.1);
  CHECK(t.rows[0].alpha_error > 0.0);
  CHECK_FALSE(t.slope);
}

TEST_CASE("lie splitting converges at first order against the oracle") {
  const Grid g({10, 10, 10}, {8, 8, 8});
  const std::vector<double> dts{0.1, 0.05, 0.025, 0.0125};
  const ConvergenceTable t = convergence_study(initial_state_gaussian_pair(g),
                                               preset_experiment1(), g, 0.5, dts, 0.5,
                                               SplittingOrder::lie);
  REQUIRE(t.slope);
  CHECK(*t.slope >= 0.75);
  CHECK(*t.slope <= 1.25);
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    // Monotone within 20% per halving.
    CHECK(t.rows[i].alpha_error < 1.2 * t.rows[i - 1].alpha_error);
  }
}
