#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catotoc/classical.hpp"
#include "catotoc/entropy.hpp"
#include "catotoc/harness/config.hpp"
#include "catotoc/harness/scenario.hpp"
#include "catotoc/harness/verify.hpp"
#include "catotoc/otoc.hpp"
#include "catotoc/states.hpp"
#include "catotoc/torus_hilbert.hpp"
#include "catotoc/wigner.hpp"

namespace py = pybind11;
using namespace catotoc;

namespace {

harness::ScenarioConfig config_from(const py::dict& kw) {
  harness::ScenarioConfig cfg;
  for (const auto& [key, value] : kw) {
    std::string v;
    if (py::isinstance<py::tuple>(value) || py::isinstance<py::list>(value)) {
      for (const auto& x : value) v += (v.empty() ? "" : ",") + py::str(x).cast<std::string>();
    } else {
      v = py::str(value).cast<std::string>();
    }
    harness::apply_override(cfg, key.cast<std::string>(), v);
  }
  cfg.validate();
  return cfg;
}

Dims square(int n) { return {n, n}; }

DensityMatrix as_density(const Matrix& m) { return DensityMatrix(m, Validation::structural); }

py::dict entropy_dict(const EntropySample& s) {
  py::dict d;
  d["s_linear"] = s.s_linear;
  d["s_vn"] = s.s_vn;
  d["s_renyi2"] = s.s_renyi2;
  d["purity"] = s.purity;
  return d;
}

}  // namespace

PYBIND11_MODULE(_catotoc, m) {
  m.doc() = "Quantum cat maps on the torus: propagators, OTOCs, entropies and Wigner functions";
  m.attr("__version__") = CATOTOC_VERSION;

  auto base = py::register_exception<Error>(m, "CatotocError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<NumericalHealthError>(m, "NumericalHealthError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  // single-mode operators
  m.def("position_operator", [](int n) { return position_operator(HilbertDim(n)).matrix(); }, py::arg("n"));
  m.def("momentum_operator", [](int n) { return momentum_operator(HilbertDim(n)).matrix(); }, py::arg("n"));
  m.def("shift_operator", [](int n) { return shift_operator(HilbertDim(n)).matrix(); }, py::arg("n"));
  m.def("clock_operator", [](int n) { return clock_operator(HilbertDim(n)).matrix(); }, py::arg("n"));
  m.def("dft_matrix", [](int n) { return dft_matrix(HilbertDim(n)).matrix(); }, py::arg("n"));
  m.def(
      "partial_trace",
      [](const Matrix& rho, int n1, int n2, int keep) {
        return partial_trace(as_density(rho), {n1, n2}, keep == 2 ? Subsystem::second : Subsystem::first).matrix();
      },
      py::arg("rho"), py::arg("n1"), py::arg("n2"), py::arg("keep") = 1);

  // maps
  m.def(
      "propagator_1d",
      [](const std::string& kind, int n, double k) {
        if (kind != "hyperbolic" && kind != "elliptic") throw InvalidArgument("kind must be hyperbolic or elliptic");
        const MapSpec s = kind == "hyperbolic" ? MapSpec::hyperbolic(k) : MapSpec::elliptic(k);
        return propagator_1d(s, HilbertDim(n)).matrix();
      },
      py::arg("kind"), py::arg("n"), py::arg("k") = 0.25);

  py::class_<FloquetPropagator>(m, "Propagator")
      .def(py::init([](const py::kwargs& kw) { return FloquetPropagator::build(config_from(kw).coupled_spec()); }),
           "Keyword arguments as in the scenario configuration: dynamics, n, k, kc.")
      .def_property_readonly("dim", &FloquetPropagator::dim)
      .def("apply", py::overload_cast<const Vector&, int>(&FloquetPropagator::apply, py::const_), py::arg("psi"),
           py::arg("steps") = 1)
      .def("dense", &FloquetPropagator::dense);

  // states
  m.def(
      "coherent_state",
      [](int n, double q, double p) { return coherent_state(HilbertDim(n), PhasePoint(q, p)).amplitudes(); },
      py::arg("n"), py::arg("q"), py::arg("p"));
  m.def(
      "product_state",
      [](const Vector& a, const Vector& b) { return product_state(StateVector(a, 1e-10), StateVector(b, 1e-10)).amplitudes(); },
      py::arg("a"), py::arg("b"));

  // entropies
  m.def("entropies", [](const Matrix& rho) { return entropy_dict(entropy_sample(0, as_density(rho))); }, py::arg("rho"));
  m.def(
      "rmt_saturation",
      [](int n) {
        const RmtSaturation r = rmt_saturation(HilbertDim(n));
        py::dict d;
        d["purity_sat"] = r.purity_sat;
        d["s_l_sat"] = r.s_l_sat;
        d["s_vn_sat"] = r.s_vn_sat;
        return d;
      },
      py::arg("n"));

  // correlators
  m.def(
      "otoc",
      [](const py::dict& scenario, const Vector& psi0, int t, const std::string& b, bool normalized_trace) {
        const FloquetPropagator u = FloquetPropagator::build(config_from(scenario).coupled_spec());
        OtocConfig cfg;
        if (b == "rho0") {
          cfg.operator_b = OperatorB::initial_density;
        } else if (b != "p2d") {
          throw InvalidArgument("b must be p2d or rho0");
        }
        cfg.average = normalized_trace ? Averaging::normalized_trace : Averaging::state_expectation;
        const CorrelatorSample s = otoc_full(cfg, density_of(StateVector(psi0, 1e-10)), u, t);
        py::dict d;
        d["c"] = s.c;
        d["c2"] = s.c2;
        d["c4_real"] = s.c4_real;
        d["c4_imag"] = s.c4_imag;
        d["norm_factor"] = s.norm_factor;
        return d;
      },
      py::arg("scenario"), py::arg("psi0"), py::arg("t"), py::arg("b") = "p2d", py::arg("normalized_trace") = false);
  m.def(
      "otoc_re_sum",
      [](const FloquetPropagator& u, const Vector& psi0, int t) { return otoc_re_sum(StateVector(psi0, 1e-10), u, t); },
      py::arg("propagator"), py::arg("psi0"), py::arg("t"));

  // Wigner functions and operator-Schmidt spectra
  m.def(
      "wigner",
      [](const Matrix& rho, int n) {
        const WignerGrid g = wigner_grid(as_density(rho), HilbertDim(n));
        if (g.dofs == 2) return g.as_matrix();
        RealMatrix out(g.side(), g.side());
        for (int q = 0; q < g.side(); ++q)
          for (int p = 0; p < g.side(); ++p) out(q, p) = g.at(q, p);
        return out;
      },
      py::arg("rho"), py::arg("n"));
  m.def(
      "operator_schmidt",
      [](const Matrix& rho, int n) { return operator_schmidt(as_density(rho), square(n)).sigmas; },
      py::arg("rho"), py::arg("n"));
  m.def(
      "wse",
      [](const Vector& psi, int n) { return wse_pure_fast(StateVector(psi, 1e-10), square(n)); }, py::arg("psi"),
      py::arg("n"));

  // classical maps
  m.def(
      "step_1d",
      [](double q, double p, const std::string& kind, double k) {
        const MapSpec s = kind == "elliptic" ? MapSpec::elliptic(k) : MapSpec::hyperbolic(k);
        const ClassicalPoint2D x = step_1d({q, p}, s);
        return std::make_pair(x.q, x.p);
      },
      py::arg("q"), py::arg("p"), py::arg("kind") = "hyperbolic", py::arg("k") = 0.25);
  m.def(
      "lyapunov_1d",
      [](const std::string& kind, double k, int steps, double q, double p) {
        const MapSpec s = kind == "elliptic" ? MapSpec::elliptic(k) : MapSpec::hyperbolic(k);
        return lyapunov_estimate(s, steps, {q, p});
      },
      py::arg("kind") = "hyperbolic", py::arg("k") = 0.0, py::arg("steps") = 10000, py::arg("q") = 0.1234,
      py::arg("p") = 0.5678);

  // harness
  m.def(
      "run_scenario",
      [](const py::kwargs& kw) {
        harness::ScenarioResult r;
        const harness::ScenarioConfig cfg = config_from(kw);
        {
          py::gil_scoped_release nogil;
          r = harness::run_scenario(cfg);
        }
        using R = harness::TimeSeriesRecord;
        const std::pair<const char*, double R::*> cols[] = {
            {"s_linear", &R::s_linear}, {"s_vn", &R::s_vn}, {"s_renyi2", &R::s_renyi2},
            {"otoc_xp", &R::otoc_xp}, {"otoc_xrho", &R::otoc_xrho}, {"c2", &R::c2},
            {"c4_real", &R::c4_real}, {"c4_imag", &R::c4_imag}, {"otoc_xp_rescaled", &R::otoc_xp_rescaled},
            {"otoc_xrho_rescaled", &R::otoc_xrho_rescaled}};
        py::dict out;
        std::vector<int> t;
        for (const auto& rec : r.records) t.push_back(rec.t);
        out["t"] = t;
        for (const auto& [name, field] : cols) out[name] = r.column(field);
        py::dict meta;
        for (const auto& [k, v] : r.metadata) meta[py::str(k)] = v;
        out["metadata"] = meta;
        return out;
      },
      "Run one scenario. Keyword arguments follow the configuration keys (dynamics, n, k, kc, center1, center2, "
      "tmax, otoc_b, outputs, fit_window).");
  m.def(
      "verify",
      [](const std::string& level) {
        harness::VerifyReport rep;
        {
          const harness::VerifyLevel lv = level == "full" ? harness::VerifyLevel::full : harness::VerifyLevel::fast;
          py::gil_scoped_release nogil;
          rep = harness::verify(lv);
        }
        py::list checks;
        for (const auto& c : rep.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["residual"] = c.residual;
          d["tolerance"] = c.tolerance;
          checks.append(d);
        }
        return py::make_tuple(rep.all_passed(), checks);
      },
      py::arg("level") = "fast");
}
