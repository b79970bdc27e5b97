#include "pauli/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pauli/errors.hpp"

namespace pauli {

namespace {

constexpr double kPi = std::numbers::pi;

// Shifted angle pi/5 * (x - 5) used by both presets on [0,10]^3.
double theta(double x) { return kPi / 5.0 * (x - 5.0); }

Vec3 experiment1_a(const Vec3& x) {
  const double t1 = theta(x[0]);
  const double t2 = theta(x[1]);
  return {-kPi * std::cos(t2) * std::sin(t2), kPi * std::cos(t1) * std::sin(t1), 0.0};
}

double experiment_b3(const Vec3& x) {
  double s = 0.0;
  for (int j = 0; j < 2; ++j) {
    const double t = theta(x[j]);
    const double c = std::cos(t);
    const double sn = std::sin(t);
    s += kPi * c * c - kPi * sn * sn;
  }
  return kPi / 5.0 * s;
}

}  // namespace

EMFields preset_experiment1() {
  EMFields f;
  f.name = "experiment1";
  f.vector_potential = experiment1_a;
  f.scalar_potential = [](const Vec3&) { return 0.0; };
  f.magnetic_field = [](const Vec3& x) { return Vec3{0.0, 0.0, experiment_b3(x)}; };
  return f;
}

EMFields preset_experiment2() {
  EMFields f;
  f.name = "experiment2";
  f.vector_potential = [](const Vec3& x) {
    Vec3 a = experiment1_a(x);
    // The overall factor pi multiplies (1/pi) cos(t1) sin(t2).
    a[2] = std::cos(theta(x[0])) * std::sin(theta(x[1]));
    return a;
  };
  f.scalar_potential = [](const Vec3&) { return 0.0; };
  f.magnetic_field = [](const Vec3& x) {
    const double t1 = theta(x[0]);
    const double t2 = theta(x[1]);
    return Vec3{kPi / 5.0 * std::cos(t1) * std::cos(t2), kPi / 5.0 * std::sin(t1) * std::sin(t2),
                experiment_b3(x)};
  };
  return f;
}

EMFields preset_zero() {
  EMFields f;
  f.name = "zero";
  f.vector_potential = [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; };
  f.scalar_potential = [](const Vec3&) { return 0.0; };
  f.magnetic_field = [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; };
  return f;
}

EMFields preset_uniform(const Vec3& a, double phi) {
  EMFields f;
  f.name = "uniform";
  f.vector_potential = [a](const Vec3&) { return a; };
  f.scalar_potential = [phi](const Vec3&) { return phi; };
  f.magnetic_field = [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; };
  return f;
}

EMFields preset_uniform_magnetic(const Vec3& b) {
  if (b[0] != 0.0 || b[1] != 0.0 || b[2] != 0.0) {
    throw InvalidArgument(
        "uniform magnetic field: symmetric-gauge potential is not periodic for B != 0");
  }
  EMFields f = preset_zero();
  f.name = "uniform-magnetic";
  return f;
}

EMFields field_preset(const std::string& name) {
  if (name == "experiment1") return preset_experiment1();
  if (name == "experiment2") return preset_experiment2();
  if (name == "zero") return preset_zero();
  throw ConfigError("unknown preset: field_preset \"" + name + "\"");
}

FieldSamples sample_fields(const EMFields& fields, const Grid& grid) {
  const std::size_t n = grid.size();
  FieldSamples s;
  s.counts = grid.counts();
  for (int a = 0; a < 3; ++a) {
    s.a[a].resize(n);
    s.b[a].resize(n);
  }
  s.phi.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 x = grid.point(i);
    const Vec3 a = fields.vector_potential(x);
    const Vec3 b = fields.magnetic_field(x);
    const double phi = fields.scalar_potential(x);
    bool finite = std::isfinite(phi);
    for (int c = 0; c < 3; ++c) finite = finite && std::isfinite(a[c]) && std::isfinite(b[c]);
    if (!finite) {
      std::ostringstream msg;
      msg << "sample_fields: non-finite value at point (" << x[0] << ", " << x[1] << ", " << x[2]
          << ")";
      throw EvaluationError(msg.str());
    }
    for (int c = 0; c < 3; ++c) {
      s.a[c][i] = a[c];
      s.b[c][i] = b[c];
    }
    s.phi[i] = phi;
  }
  return s;
}

FieldValidation validate_fields(const FieldSamples& samples, const Grid& grid, double tol) {
  if (samples.counts != grid.counts()) {
    throw InvalidArgument("validate_fields: samples do not match grid");
  }
  FieldValidation report;
  const RealField div = divergence(samples.a, grid);
  for (double v : div) report.max_divergence = std::max(report.max_divergence, std::abs(v));

  const VectorField rot = curl(samples.a, grid);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < rot[c].size(); ++i) {
      report.max_curl_error = std::max(report.max_curl_error, std::abs(rot[c][i] - samples.b[c][i]));
    }
  }
  report.coulomb_gauge_ok = report.max_divergence <= tol;
  report.curl_ok = report.max_curl_error <= tol;
  return report;
}

bool is_decoupled(const FieldSamples& samples) {
  auto zero = [](const RealField& f) {
    return std::all_of(f.begin(), f.end(), [](double v) { return v == 0.0; });
  };
  return zero(samples.b[0]) && zero(samples.b[1]);
}

}  // namespace pauli
