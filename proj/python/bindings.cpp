#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "hardynls/cli/commands.hpp"
#include "hardynls/cli/output.hpp"
#include "hardynls/errors.hpp"
#include "hardynls/evolution.hpp"
#include "hardynls/functionals.hpp"
#include "hardynls/ground_state.hpp"
#include "hardynls/inequalities.hpp"
#include "hardynls/kelvin.hpp"
#include "hardynls/stability.hpp"
#include "hardynls/version.hpp"

namespace py = pybind11;
using namespace hardynls;

namespace {

using cplx = std::complex<double>;

struct Grid {
  GridPtr ptr;
};

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<cplx> to_array(const std::vector<cplx>& v) {
  return py::array_t<cplx>(static_cast<py::ssize_t>(v.size()), v.data());
}

Field to_field(const Grid& g, py::array_t<cplx, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != g.ptr->size()) {
    throw ShapeError("array length does not match the grid");
  }
  return Field(g.ptr, std::vector<cplx>(a.data(), a.data() + a.shape(0)));
}

py::dict energies_dict(const EnergyReport& e) {
  py::dict d;
  d["dirichlet_mu"] = e.dirichlet_mu;
  d["mass_mu"] = e.mass_mu;
  d["nonlinear"] = e.nonlinear;
  d["E"] = e.E;
  d["J"] = e.J;
  d["h_norm_sq"] = e.h_norm_sq;
  return d;
}

py::dict report_dict(const InequalityReport& r) {
  // same keys as the CLI report
  return py::module_::import("json").attr("loads")(cli::report_to_json(r).dump());
}

Params make_params(int N, double q, double gamma, std::optional<double> omega_zero,
                   std::optional<double> omega_inf) {
  Params p;
  p.N = N;
  p.q = q;
  p.gamma = gamma;
  if (omega_zero || omega_inf) {
    p.weight = WeightSpec::power_law(omega_zero.value_or(0.0), omega_inf.value_or(0.0));
  }
  return p;
}

}  // namespace

PYBIND11_MODULE(_hardynls, m) {
  m.doc() = "Radial standing waves with a critical inverse-square potential";
  m.attr("__version__") = kVersion;

  static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
  static py::exception<ParameterError> param(m, "ParameterError", PyExc_ValueError);
  static py::exception<ConvergenceError> conv(m, "ConvergenceError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParameterError& e) {
      py::set_error(param, e.what());
    } catch (const ConvergenceError& e) {
      py::set_error(conv, e.what());
    } catch (const Error& e) {
      py::set_error(base, e.what());
    }
  });

  py::class_<Grid>(m, "Grid")
      .def(py::init([](std::size_t n, double r_min, double r_max, const std::string& grading) {
             return Grid{build_grid(n, r_min, r_max, parse_grading(grading))};
           }),
           py::arg("n") = 8192, py::arg("r_min") = 1e-4, py::arg("r_max") = 50.0,
           py::arg("grading") = "log")
      .def_property_readonly("size", [](const Grid& g) { return g.ptr->size(); })
      .def_property_readonly("nodes", [](const Grid& g) { return to_array(g.ptr->nodes()); })
      .def_property_readonly("weights", [](const Grid& g) { return to_array(g.ptr->weights()); })
      .def_property_readonly("grading", [](const Grid& g) { return grading_name(g.ptr->grading()); })
      .def("reciprocal", [](const Grid& g) { return Grid{g.ptr->reciprocal()}; })
      .def("__len__", [](const Grid& g) { return g.ptr->size(); });

  py::class_<Params>(m, "Params")
      .def(py::init(&make_params), py::arg("N") = 3, py::arg("q") = 3.0, py::arg("gamma") = 1.0,
           py::arg("omega_zero") = py::none(), py::arg("omega_inf") = py::none())
      .def_readwrite("N", &Params::N)
      .def_readwrite("q", &Params::q)
      .def_readwrite("gamma", &Params::gamma)
      .def_property_readonly("has_weight", [](const Params& p) { return p.weight.has_value(); })
      .def("g", &Params::g, py::arg("r"))
      .def("__repr__", [](const Params& p) {
        return "Params(N=" + std::to_string(p.N) + ", q=" + cli::format_double(p.q) +
               ", gamma=" + cli::format_double(p.gamma) + ")";
      });

  py::class_<StandingWave>(m, "StandingWave")
      .def_property_readonly("v", [](const StandingWave& s) { return to_array(s.v.real_part()); })
      .def_readonly("lambda_", &StandingWave::lambda)
      .def_readonly("gamma", &StandingWave::gamma)
      .def_readonly("v0", &StandingWave::v0)
      .def_readonly("exponent", &StandingWave::exponent)
      .def_readonly("Lambda_origin", &StandingWave::Lambda_origin)
      .def_readonly("residual", &StandingWave::residual)
      .def_readonly("iterations", &StandingWave::iterations)
      .def_readonly("J_history", &StandingWave::J_history)
      .def_property_readonly("energies",
                             [](const StandingWave& s) { return energies_dict(s.energies); });

  m.def("to_u", [](const Grid& g, py::array_t<cplx> v, int N) {
    return to_array(to_u(to_field(g, v), N).values());
  }, py::arg("grid"), py::arg("v"), py::arg("N"));
  m.def("to_v", [](const Grid& g, py::array_t<cplx> u, int N) {
    return to_array(to_v(to_field(g, u), N).values());
  }, py::arg("grid"), py::arg("u"), py::arg("N"));
  m.def("mass_mu", [](const Grid& g, py::array_t<cplx> v, int N) {
    return mass_mu(to_field(g, v), N);
  }, py::arg("grid"), py::arg("v"), py::arg("N"));
  m.def("energy", [](const Grid& g, py::array_t<cplx> v, const Params& p) {
    return energies_dict(energy_J(to_field(g, v), p));
  }, py::arg("grid"), py::arg("v"), py::arg("params"));
  m.def("hardy_functional", [](const Grid& g, py::array_t<cplx> u, int N, double eps) {
    return hardy_functional_u(to_field(g, u), N, eps);
  }, py::arg("grid"), py::arg("u"), py::arg("N"), py::arg("eps"));

  m.def("ground_state",
        [](const Params& p, const Grid& g, double tol, int max_iter, const std::string& init) {
          FlowOptions o;
          o.tol = tol;
          o.max_iter = max_iter;
          const Field f = init == "exponential" ? exponential_init(g.ptr, p) : gaussian_init(g.ptr, p);
          py::gil_scoped_release release;
          return normalized_gradient_flow(p, g.ptr, f, o);
        },
        py::arg("params"), py::arg("grid"), py::arg("tol") = 1e-7, py::arg("max_iter") = 200000,
        py::arg("init") = "gaussian");

  m.def("evolve",
        [](const Params& p, const Grid& g, py::array_t<cplx> v0, double dt, int steps,
           const std::string& scheme, bool nonlinear) {
          EvolutionOptions o;
          o.scheme = parse_scheme(scheme);
          o.nonlinear = nonlinear;
          const EvolutionState s0 = make_state(to_field(g, v0), p, nonlinear);
          EvolutionState s1 = [&] {
            py::gil_scoped_release release;
            return propagate(s0, p, dt, steps, o);
          }();
          const auto [charge, energy] = invariants(s1, p, nonlinear);
          py::dict d;
          d["v"] = to_array(s1.v.values());
          d["time"] = s1.time;
          d["charge0"] = s0.charge0;
          d["energy0"] = s0.energy0;
          d["charge"] = charge;
          d["energy"] = energy;
          return d;
        },
        py::arg("params"), py::arg("grid"), py::arg("v0"), py::arg("dt"), py::arg("steps"),
        py::arg("scheme") = "crank-nicolson", py::arg("nonlinear") = true);
  m.def("free_gaussian", &free_gaussian, py::arg("r"), py::arg("t"));

  m.def("orbit_distance", [](const Grid& g, py::array_t<cplx> v, const StandingWave& sw, int N) {
    return orbit_distance(to_field(g, v), sw, N);
  }, py::arg("grid"), py::arg("v"), py::arg("wave"), py::arg("N"));
  m.def("stability",
        [](const Params& p, const StandingWave& sw, double delta, const std::string& kind,
           double T, double dt) {
          StabilityRun r = [&] {
            py::gil_scoped_release release;
            return stability_experiment(p, sw, delta, parse_perturbation(kind), T, dt);
          }();
          py::dict d;
          d["delta"] = r.delta;
          d["initial_distance"] = r.initial_distance;
          d["max_distance"] = r.max_distance;
          d["ratio"] = r.ratio();
          d["times"] = to_array(r.times);
          d["distances"] = to_array(r.distances);
          d["charge_drift"] = to_array(r.charge_drift);
          d["energy_drift"] = to_array(r.energy_drift);
          return d;
        },
        py::arg("params"), py::arg("wave"), py::arg("delta"), py::arg("kind") = "radial-bump",
        py::arg("T") = 20.0, py::arg("dt") = 1e-2);

  m.def("check_hardy", [](int samples, std::uint64_t seed, int N, const Grid& g) {
    return report_dict(check_hardy(samples, seed, N, g.ptr));
  }, py::arg("samples") = 1000, py::arg("seed") = 42, py::arg("N") = 3, py::arg("grid"));
  m.def("check_ckn", [](int samples, std::uint64_t seed, const Params& p, const Grid& g) {
    return report_dict(check_ckn(samples, seed, p, g.ptr));
  }, py::arg("samples") = 1000, py::arg("seed") = 42, py::arg("params"), py::arg("grid"));
  m.def("check_ihs",
        [](int samples, std::uint64_t seed, int N, const std::string& h, const Grid& g) {
          return report_dict(check_ihs(samples, seed, N, parse_h_kind(h), g.ptr));
        },
        py::arg("samples") = 1000, py::arg("seed") = 42, py::arg("N") = 3,
        py::arg("h_kind") = "piecewise-paper", py::arg("grid"));
  m.def("check_weight",
        [](double omega_zero, double omega_inf, int N, double q) {
          Params p;
          p.N = N;
          p.q = q;
          const WeightVerdict v = check_weight_condition(WeightSpec::power_law(omega_zero, omega_inf), p);
          py::dict d;
          d["threshold"] = v.threshold;
          d["condition"] = v.condition;
          d["lp_exponent"] = v.lp_exponent;
          d["l1_norm"] = v.l1_norm;
          d["lp_norm"] = v.lp_norm;
          d["integrability"] = v.integrability;
          return d;
        },
        py::arg("omega_zero"), py::arg("omega_inf"), py::arg("N") = 3, py::arg("q") = 3.0);

  m.def("verify_kelvin",
        [](const Grid& g, int N, int samples, std::uint64_t seed, double tail) {
          const KelvinVerification k = verify_kelvin(g.ptr, N, samples, seed, tail);
          py::dict d;
          d["nodes_exact"] = k.nodes_exact;
          d["involution_error"] = k.involution_error;
          d["max_equivalence_error"] = k.max_equivalence_error;
          d["Lambda_inf"] = k.Lambda_inf;
          d["Lambda_expected"] = k.Lambda_expected;
          d["Lambda_rel_error"] = k.Lambda_rel_error;
          return d;
        },
        py::arg("grid"), py::arg("N") = 3, py::arg("samples") = 100, py::arg("seed") = 42,
        py::arg("tail_coefficient") = 0.7);

  m.def("run", [](const std::string& config_json) {
    const cli::RunConfig cfg = cli::config_from_json(nlohmann::json::parse(config_json));
    cli::CommandResult r = [&] {
      py::gil_scoped_release release;
      return cli::run_command(cfg);
    }();
    std::vector<std::string> files;
    for (const auto& f : r.files) files.push_back(f.string());
    return py::make_tuple(r.exit_code, files);
  }, py::arg("config_json"), "Run a CLI command from a JSON config; returns (exit_code, files).");
  m.def("config_hash", [](const std::string& config_json) {
    return cli::config_hash(cli::config_from_json(nlohmann::json::parse(config_json)));
  }, py::arg("config_json"));
}
