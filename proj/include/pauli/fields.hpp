#pragma once

#include <functional>
#include <string>

#include "pauli/grid.hpp"

namespace pauli {

/// Time-independent electromagnetic data in scaled units: vector potential
/// A, scalar potential phi and magnetic field B = curl A.
struct EMFields {
  std::string name;
  std::function<Vec3(const Vec3&)> vector_potential;
  std::function<double(const Vec3&)> scalar_potential;
  std::function<Vec3(const Vec3&)> magnetic_field;
  /// Box periods the formulas are periodic with.
  Vec3 periods{10.0, 10.0, 10.0};
};

/// Rotational in-plane potential with B along x3 only; phi = 0.
EMFields preset_experiment1();
/// experiment1 plus an x3 component of A, which adds in-plane B1, B2.
EMFields preset_experiment2();
/// A = 0, phi = 0, B = 0.
EMFields preset_zero();
/// Spatially constant A and phi, B = 0.
EMFields preset_uniform(const Vec3& a, double phi);
/// Constant field B via the symmetric gauge A = B x x / 2. That potential is
/// not periodic unless B = 0, so any non-zero B is rejected.
EMFields preset_uniform_magnetic(const Vec3& b);

/// Looks up "experiment1", "experiment2" or "zero"; throws ConfigError
/// ("unknown preset") otherwise.
EMFields field_preset(const std::string& name);

/// Grid samples of an EMFields value.
struct FieldSamples {
  Index3 counts{};
  VectorField a;
  RealField phi;
  VectorField b;
};

/// Pointwise evaluation at every grid point; throws EvaluationError naming
/// the first point that produced a non-finite value.
FieldSamples sample_fields(const EMFields& fields, const Grid& grid);

struct FieldValidation {
  double max_divergence = 0.0;  ///< max |div A|
  double max_curl_error = 0.0;  ///< max |curl A - B| over components
  bool coulomb_gauge_ok = false;
  bool curl_ok = false;
  bool ok() const noexcept { return coulomb_gauge_ok && curl_ok; }
};

/// Spectral check of div A = 0 and curl A = B against tol (max norm).
FieldValidation validate_fields(const FieldSamples& samples, const Grid& grid, double tol);

/// True when B1 = B2 = 0 at every sample, i.e. the spin components decouple.
bool is_decoupled(const FieldSamples& samples);

}  // namespace pauli
