#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwalk/analytic.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/experiments.hpp"
#include "qwalk/symmetry.hpp"

namespace py = pybind11;
using namespace qwalk;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete-time quantum walks on rings, wires and lines: evolution, spectra and analytic edge states.";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<GeometryMismatch>(m, "GeometryMismatch", PyExc_ValueError);
  py::register_exception<HorizonExceeded>(m, "HorizonExceeded", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

  py::class_<CoinPhases>(m, "CoinPhases")
      .def(py::init([](double delta, double zeta, double sigma) { return CoinPhases{delta, zeta, sigma}; }),
           py::arg("delta") = 0.0, py::arg("zeta") = 0.0, py::arg("sigma") = 0.0)
      .def_readwrite("delta", &CoinPhases::delta)
      .def_readwrite("zeta", &CoinPhases::zeta)
      .def_readwrite("sigma", &CoinPhases::sigma)
      .def("__repr__", [](const CoinPhases& p) {
        return "CoinPhases(delta=" + std::to_string(p.delta) + ", zeta=" + std::to_string(p.zeta) +
               ", sigma=" + std::to_string(p.sigma) + ")";
      });

  m.def(
      "coin_matrix",
      [](double theta, const CoinPhases& ph) { return Eigen::MatrixXcd(coin_matrix(CoinParams(theta, ph))); },
      py::arg("theta"), py::arg("phases") = CoinPhases{});

  py::class_<Geometry>(m, "Geometry")
      .def_static("cycle", &Geometry::cycle, py::arg("size"), py::arg("origin_offset") = 0)
      .def_static("wire", &Geometry::wire, py::arg("size"))
      .def_static("truncated_line", py::overload_cast<int, int>(&Geometry::truncated_line), py::arg("horizon"),
                  py::arg("support_radius") = 0)
      .def_property_readonly("size", &Geometry::size)
      .def_property_readonly("x_min", &Geometry::x_min)
      .def_property_readonly("x_max", &Geometry::x_max)
      .def_property_readonly("kind", [](const Geometry& g) { return std::string(to_string(g.kind())); })
      .def("index", &Geometry::index)
      .def("coordinates", [](const Geometry& g) {
        std::vector<int> xs;
        for (int i = 0; i < g.size(); ++i) xs.push_back(g.coordinate(i));
        return xs;
      });

  py::class_<CoinField>(m, "CoinField")
      .def(py::init([](const Geometry& g, const std::vector<double>& thetas, const CoinPhases& ph) {
             std::vector<CoinParams> coins;
             for (double t : thetas) coins.emplace_back(t, ph);
             return CoinField(g, std::move(coins));
           }),
           py::arg("geometry"), py::arg("thetas"), py::arg("phases") = CoinPhases{})
      .def_static("homogeneous",
                  [](const Geometry& g, double theta, const CoinPhases& ph) {
                    return CoinField::homogeneous(g, CoinParams(theta, ph));
                  },
                  py::arg("geometry"), py::arg("theta"), py::arg("phases") = CoinPhases{})
      .def_static("interface", &CoinField::interface, py::arg("geometry"), py::arg("theta_minus"),
                  py::arg("theta_plus"), py::arg("phases") = CoinPhases{})
      .def_static("cycle_two_segment", &CoinField::cycle_two_segment, py::arg("size"), py::arg("segment"),
                  py::arg("theta_a"), py::arg("theta_b"), py::arg("phases") = CoinPhases{})
      .def_static("defect", &CoinField::defect, py::arg("geometry"), py::arg("theta_a"), py::arg("theta_b"),
                  py::arg("phases") = CoinPhases{}, py::arg("defect_x") = 0)
      .def_static("wire", py::overload_cast<int, double, double, double, CoinPhases>(&CoinField::wire),
                  py::arg("size"), py::arg("theta"), py::arg("left_end") = -0.5 * kPi,
                  py::arg("right_end") = -0.5 * kPi, py::arg("phases") = CoinPhases{})
      .def_property_readonly("geometry", &CoinField::geometry)
      .def("thetas", [](const CoinField& f) {
        std::vector<double> out;
        for (const auto& c : f.coins()) out.push_back(c.theta());
        return out;
      });

  py::class_<WalkerState>(m, "WalkerState")
      .def(py::init<Geometry, Eigen::VectorXcd>(), py::arg("geometry"), py::arg("amplitudes"))
      .def_static("localized", &WalkerState::localized, py::arg("geometry"), py::arg("x"), py::arg("a"),
                  py::arg("b"))
      .def_property_readonly("geometry", &WalkerState::geometry)
      .def_property_readonly("amplitudes", [](const WalkerState& s) { return s.vector(); })
      .def("norm", &WalkerState::norm)
      .def("site_probabilities", &WalkerState::site_probabilities);

  m.def("overlap", &overlap);
  m.def("apply_step", &apply_step);
  m.def("apply_coin", &apply_coin);
  m.def(
      "evolve",
      [](const WalkerState& s, const CoinField& f, int steps, bool trajectory) {
        EvolveOptions o;
        o.record_trajectory = trajectory;
        auto r = evolve(s, f, steps, o);
        return py::make_tuple(r.state, r.trajectory);
      },
      py::arg("state"), py::arg("field"), py::arg("steps"), py::arg("trajectory") = false);

  m.def("build_unitary", &build_unitary);
  m.def("quasienergies", &quasienergies);
  py::class_<SpectralResult>(m, "SpectralResult")
      .def_readonly("quasienergies", &SpectralResult::quasienergies)
      .def_readonly("eigenvectors", &SpectralResult::eigenvectors)
      .def_readonly("residuals", &SpectralResult::residuals)
      .def_readonly("ipr", &SpectralResult::ipr)
      .def_readonly("xi", &SpectralResult::xi)
      .def("__len__", &SpectralResult::size);
  m.def("diagonalize", [](const CoinField& f) { return diagonalize(f); }, py::arg("field"));
  m.def("gap_state_filter", &gap_state_filter, py::arg("result"), py::arg("lo"), py::arg("hi"),
        py::arg("ipr_threshold") = py::none());
  m.def("pair_splitting", [](const std::vector<double>& w, double c) { return pair_splitting(w, c); });

  py::enum_<Symmetry>(m, "Symmetry")
      .value("Omega", Symmetry::Omega)
      .value("OmegaPrime", Symmetry::OmegaPrime)
      .value("Lambda", Symmetry::Lambda)
      .value("Pi", Symmetry::Pi)
      .value("Gamma", Symmetry::Gamma);
  m.def("symmetry_apply", &symmetry_apply, py::arg("which"), py::arg("state"), py::arg("phases") = CoinPhases{});

  m.def("localization_length", &localization_length);
  m.def("tail_probability", &tail_probability);
  py::class_<InterfaceState>(m, "InterfaceState")
      .def_readonly("state", &InterfaceState::state)
      .def_readonly("xi_plus", &InterfaceState::xi_plus)
      .def_readonly("xi_minus", &InterfaceState::xi_minus)
      .def_readonly("norm_constant", &InterfaceState::norm_constant)
      .def_readonly("omega", &InterfaceState::omega)
      .def_readonly("tail_mass", &InterfaceState::tail_mass);
  m.def(
      "interface_state",
      [](double tm, double tp, const CoinPhases& ph, double eta, std::optional<int> radius) {
        return interface_state({tm, tp, ph, eta}, radius);
      },
      py::arg("theta_minus"), py::arg("theta_plus"), py::arg("phases") = CoinPhases{}, py::arg("eta") = 0.0,
      py::arg("radius") = py::none());

  py::class_<AnalyticGapSolution>(m, "AnalyticGapSolution")
      .def_readonly("theta", &AnalyticGapSolution::theta)
      .def_readonly("L", &AnalyticGapSolution::L)
      .def_readonly("omega", &AnalyticGapSolution::omega)
      .def_readonly("k", &AnalyticGapSolution::k)
      .def_readonly("k0", &AnalyticGapSolution::k0)
      .def_readonly("mu", &AnalyticGapSolution::mu)
      .def_readonly("residual", &AnalyticGapSolution::residual);
  m.def("solve_gap", &solve_gap, py::arg("theta"), py::arg("L"), py::arg("zeta_size") = 1);
  m.def("approx_gap_energy", &approx_gap_energy, py::arg("theta"), py::arg("L"), py::arg("zeta_size") = 1);
  m.def("gap_eigenvector", &gap_eigenvector, py::arg("solution"), py::arg("phases") = CoinPhases{});
  m.def(
      "analytic_quasienergies",
      [](double theta, int size, const CoinPhases& ph) { return analytic_spectrum(theta, size, ph).all; },
      py::arg("theta"), py::arg("size"), py::arg("phases") = CoinPhases{});
  m.def(
      "rabi_gap_prediction",
      [](double theta, int size) {
        const auto r = rabi_gap_prediction(theta, size);
        return py::dict(py::arg("delta_omega") = r.delta_omega, py::arg("period") = r.period,
                        py::arg("main_text_delta_omega") = r.main_text_delta_omega,
                        py::arg("approx_delta_omega") = r.approx_delta_omega);
      },
      py::arg("theta"), py::arg("size"));

  py::class_<RabiAnalysis>(m, "RabiAnalysis")
      .def_readonly("delta_omega", &RabiAnalysis::delta_omega)
      .def_readonly("predicted_period", &RabiAnalysis::predicted_period)
      .def_readonly("period_estimate", &RabiAnalysis::period_estimate)
      .def_readonly("confinement", &RabiAnalysis::confinement)
      .def_readonly("max_center_probability", &RabiAnalysis::max_center_probability)
      .def_readonly("p_L", &RabiAnalysis::p_L)
      .def_readonly("p_R", &RabiAnalysis::p_R)
      .def_readonly("steps", &RabiAnalysis::steps);
  m.def(
      "run_rabi_transport",
      [](int size, double theta, const CoinPhases& ph, std::optional<int> steps) {
        py::gil_scoped_release nogil;
        return run_rabi_transport(size, theta, ph, steps);
      },
      py::arg("size"), py::arg("theta"), py::arg("phases") = CoinPhases{}, py::arg("steps") = py::none());
}
