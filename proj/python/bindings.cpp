#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pauli/commands.hpp"
#include "pauli/errors.hpp"
#include "pauli/fields.hpp"
#include "pauli/grid.hpp"
#include "pauli/observables.hpp"
#include "pauli/oracle.hpp"
#include "pauli/splitting.hpp"
#include "pauli/state.hpp"

namespace py = pybind11;
using namespace pauli;

namespace {

// Grid storage runs with the first index fastest, which is Fortran order.
using ComplexArray = py::array_t<Complex, py::array::f_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::f_style>;

std::vector<py::ssize_t> shape_of(const Grid& g) {
  return {static_cast<py::ssize_t>(g.counts()[0]), static_cast<py::ssize_t>(g.counts()[1]),
          static_cast<py::ssize_t>(g.counts()[2])};
}

template <typename T>
py::array_t<T, py::array::f_style> to_array(const std::vector<T>& v, const Grid& g) {
  py::array_t<T, py::array::f_style> out(shape_of(g));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<Complex> from_array(const ComplexArray& a, const Grid& g, const char* name) {
  if (a.ndim() != 3 || a.shape(0) != static_cast<py::ssize_t>(g.counts()[0]) ||
      a.shape(1) != static_cast<py::ssize_t>(g.counts()[1]) ||
      a.shape(2) != static_cast<py::ssize_t>(g.counts()[2])) {
    throw InvalidArgument(std::string(name) + " must have the grid shape");
  }
  return {a.data(), a.data() + a.size()};
}

SpinorField to_state(const ComplexArray& u1, const ComplexArray& u2, const Grid& g) {
  SpinorField s;
  s.counts = g.counts();
  s.u1 = from_array(u1, g, "u1");
  s.u2 = from_array(u2, g, "u2");
  return s;
}

py::tuple from_state(const SpinorField& s, const Grid& g) {
  return py::make_tuple(to_array(s.u1, g), to_array(s.u2, g));
}

SplittingOrder parse_order(const std::string& name) {
  if (name == "lie") return SplittingOrder::lie;
  if (name == "strang") return SplittingOrder::strang;
  throw InvalidArgument("order must be 'lie' or 'strang', got '" + name + "'");
}

py::dict records_dict(const std::vector<SeriesRecord>& rs) {
  auto column = [&](double SeriesRecord::*m) {
    py::array_t<double> out(static_cast<py::ssize_t>(rs.size()));
    for (std::size_t i = 0; i < rs.size(); ++i) out.mutable_at(i) = rs[i].*m;
    return out;
  };
  py::dict d;
  d["time"] = column(&SeriesRecord::time);
  d["mass"] = column(&SeriesRecord::mass);
  d["l2_u1"] = column(&SeriesRecord::l2_u1);
  d["l2_u2"] = column(&SeriesRecord::l2_u2);
  d["alpha"] = column(&SeriesRecord::alpha);
  d["energy"] = column(&SeriesRecord::energy);
  return d;
}

py::tuple run_with(const std::string& path,
                   int (*cmd)(const RunConfig&, std::ostream&)) {
  std::ostringstream log;
  int code;
  try {
    code = cmd(load_run_config(path), log);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    code = kExitConfig;
  }
  return py::make_tuple(code, log.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral splitting solver for the scaled Pauli equation.";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);
  py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_ArithmeticError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);

  py::class_<Grid>(m, "Grid")
      .def(py::init<const Vec3&, const std::array<int, 3>&>(), py::arg("lengths"),
           py::arg("counts"))
      .def_property_readonly("lengths", &Grid::lengths)
      .def_property_readonly("counts", &Grid::counts)
      .def_property_readonly("spacings", &Grid::spacings)
      .def_property_readonly("size", &Grid::size)
      .def_property_readonly("cell_volume", &Grid::cell_volume)
      .def("coordinates",
           [](const Grid& g) {
             std::array<std::vector<double>, 3> x;
             for (auto& c : x) c.resize(g.size());
             for (std::size_t i = 0; i < g.size(); ++i) {
               const Vec3 p = g.point(i);
               for (int k = 0; k < 3; ++k) x[k][i] = p[k];
             }
             return py::make_tuple(to_array(x[0], g), to_array(x[1], g), to_array(x[2], g));
           },
           "Coordinate arrays (x1, x2, x3), each of the grid shape.")
      .def("__repr__", [](const Grid& g) {
        std::ostringstream s;
        s << "Grid(lengths=(" << g.lengths()[0] << ", " << g.lengths()[1] << ", "
          << g.lengths()[2] << "), counts=(" << g.counts()[0] << ", " << g.counts()[1] << ", "
          << g.counts()[2] << "))";
        return s.str();
      });

  py::class_<EMFields>(m, "Fields")
      .def_readonly("name", &EMFields::name)
      .def_readonly("periods", &EMFields::periods)
      .def("sample",
           [](const EMFields& f, const Grid& g) {
             const FieldSamples s = sample_fields(f, g);
             py::dict d;
             d["a"] = py::make_tuple(to_array(s.a[0], g), to_array(s.a[1], g),
                                     to_array(s.a[2], g));
             d["b"] = py::make_tuple(to_array(s.b[0], g), to_array(s.b[1], g),
                                     to_array(s.b[2], g));
             d["phi"] = to_array(s.phi, g);
             return d;
           },
           py::arg("grid"))
      .def("validate",
           [](const EMFields& f, const Grid& g, double tol) {
             const FieldValidation v = validate_fields(sample_fields(f, g), g, tol);
             py::dict d;
             d["max_divergence"] = v.max_divergence;
             d["max_curl_error"] = v.max_curl_error;
             d["ok"] = v.ok();
             return d;
           },
           py::arg("grid"), py::arg("tol") = 1e-8)
      .def("__repr__", [](const EMFields& f) { return "Fields('" + f.name + "')"; });

  m.def("field_preset", &field_preset, py::arg("name"));
  m.def("uniform_fields", &preset_uniform, py::arg("a"), py::arg("phi") = 0.0);
  m.def("uniform_magnetic", &preset_uniform_magnetic, py::arg("b"));

  m.def(
      "initial_state",
      [](const std::string& name, const Grid& g) { return from_state(initial_preset(name, g), g); },
      py::arg("name"), py::arg("grid"), "Returns (u1, u2) for a named initial state.");

  m.def(
      "evolve",
      [](const ComplexArray& u1, const ComplexArray& u2, const EMFields& f, const Grid& g,
         double dt, double t_final, double epsilon, const std::string& order, int substeps) {
        SolverConfig cfg;
        cfg.epsilon = epsilon;
        cfg.dt = dt;
        cfg.t_final = t_final;
        cfg.order = parse_order(order);
        cfg.characteristic_substeps = substeps;
        const SpinorField s0 = to_state(u1, u2, g);
        std::vector<SeriesRecord> records{make_record(0.0, s0, sample_fields(f, g), g, epsilon)};
        EvolveObserver obs;
        obs.on_record = [&](const SeriesRecord& r) { records.push_back(r); };
        const SpinorField s = evolve(s0, f, g, cfg, obs);
        return py::make_tuple(to_array(s.u1, g), to_array(s.u2, g), records_dict(records));
      },
      py::arg("u1"), py::arg("u2"), py::arg("fields"), py::arg("grid"), py::arg("dt"),
      py::arg("t_final"), py::arg("epsilon") = 0.5, py::arg("order") = "lie",
      py::arg("substeps") = 4,
      "Time-steps (u1, u2); returns (u1, u2, series) where series holds one row per step "
      "including t=0.");

  m.def(
      "exact_evolve",
      [](const ComplexArray& u1, const ComplexArray& u2, const EMFields& f, const Grid& g,
         double t, double epsilon) {
        const DenseGenerator gen = assemble_generator(sample_fields(f, g), g, epsilon);
        return from_state(exact_evolve(to_state(u1, u2, g), gen, t), g);
      },
      py::arg("u1"), py::arg("u2"), py::arg("fields"), py::arg("grid"), py::arg("t"),
      py::arg("epsilon") = 0.5, "Reference solution exp(tG)u from the dense generator.");

  m.def(
      "convergence_study",
      [](const ComplexArray& u1, const ComplexArray& u2, const EMFields& f, const Grid& g,
         const std::vector<double>& dts, double t_final, double epsilon,
         const std::string& order, int substeps) {
        const ConvergenceTable t = convergence_study(to_state(u1, u2, g), f, g, epsilon, dts,
                                                     t_final, parse_order(order), substeps);
        std::vector<double> dt, err;
        for (const auto& r : t.rows) {
          dt.push_back(r.dt);
          err.push_back(r.alpha_error);
        }
        py::dict d;
        d["dt"] = dt;
        d["alpha_error"] = err;
        d["slope"] = t.slope ? py::cast(*t.slope) : py::none();
        return d;
      },
      py::arg("u1"), py::arg("u2"), py::arg("fields"), py::arg("grid"), py::arg("dts"),
      py::arg("t_final"), py::arg("epsilon") = 0.5, py::arg("order") = "lie",
      py::arg("substeps") = 4);

  m.def(
      "total_mass",
      [](const ComplexArray& u1, const ComplexArray& u2, const Grid& g) {
        return total_mass(to_state(u1, u2, g), g);
      },
      py::arg("u1"), py::arg("u2"), py::arg("grid"));
  m.def(
      "alpha_norm",
      [](const ComplexArray& u1, const ComplexArray& u2, const Grid& g) {
        return alpha_norm(to_state(u1, u2, g), g);
      },
      py::arg("u1"), py::arg("u2"), py::arg("grid"));
  m.def(
      "component_l2",
      [](const ComplexArray& u1, const ComplexArray& u2, const Grid& g) {
        return component_l2(to_state(u1, u2, g), g);
      },
      py::arg("u1"), py::arg("u2"), py::arg("grid"));
  m.def(
      "total_energy",
      [](const ComplexArray& u1, const ComplexArray& u2, const EMFields& f, const Grid& g,
         double epsilon) {
        return total_energy(to_state(u1, u2, g), sample_fields(f, g), g, epsilon);
      },
      py::arg("u1"), py::arg("u2"), py::arg("fields"), py::arg("grid"),
      py::arg("epsilon") = 0.5);
  m.def(
      "density",
      [](const ComplexArray& u1, const ComplexArray& u2, const Grid& g) {
        return to_array(density(to_state(u1, u2, g)), g);
      },
      py::arg("u1"), py::arg("u2"), py::arg("grid"));
  m.def(
      "current_density",
      [](const ComplexArray& u1, const ComplexArray& u2, const EMFields& f, const Grid& g,
         double epsilon) {
        const VectorField j =
            current_density(to_state(u1, u2, g), sample_fields(f, g), g, epsilon);
        return py::make_tuple(to_array(j[0], g), to_array(j[1], g), to_array(j[2], g));
      },
      py::arg("u1"), py::arg("u2"), py::arg("fields"), py::arg("grid"),
      py::arg("epsilon") = 0.5);
  m.def(
      "state_error",
      [](const ComplexArray& a1, const ComplexArray& a2, const ComplexArray& b1,
         const ComplexArray& b2, const Grid& g) {
        const ErrorMetrics e = state_error(to_state(a1, a2, g), to_state(b1, b2, g), g);
        py::dict d;
        d["max_abs"] = e.max_abs;
        d["rel"] = e.rel;
        d["alpha_diff"] = e.alpha_diff;
        return d;
      },
      py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"), py::arg("grid"));

  m.def(
      "run", [](const std::string& path) { return run_with(path, &run_command); },
      py::arg("config"), "Runs a JSON config like the CLI; returns (exit_code, log).");
  m.def(
      "validate", [](const std::string& path) { return run_with(path, &validate_command); },
      py::arg("config"), "Structural checks for a JSON config; returns (exit_code, log).");
}
