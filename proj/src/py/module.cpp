#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stirap/adiabatic.hpp"
#include "stirap/full8.hpp"
#include "stirap/lindblad.hpp"
#include "stirap/reduced.hpp"
#include "stirap/run.hpp"

namespace py = pybind11;
using namespace stirap;

namespace {

// nested 3x3 lists convert cleanly to python / numpy
using PyMatrix3 = std::array<std::array<Complex, 3>, 3>;

PyMatrix3 to_py(const ComplexMatrix3& m) {
    PyMatrix3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    return out;
}

std::vector<PyMatrix3> states_to_py(const Trajectory& t) {
    std::vector<PyMatrix3> out;
    out.reserve(t.states.size());
    for (const DensityMatrix3& s : t.states) out.push_back(to_py(s.m));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-level population transfer through a dephasing intermediate spin: "
              "exact, dressed-frame, reduced and closed-form dynamics.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_RuntimeError);

    py::class_<Protocol>(m, "Protocol")
        .def_static("linear_sine", &Protocol::linear_sine, py::arg("omega0"), py::arg("t0"))
        .def_static("gaussian", &Protocol::gaussian, py::arg("omega0"), py::arg("t_width"),
                    py::arg("tau"))
        .def_static("gaussian_custom_window", &Protocol::gaussian_custom_window, py::arg("omega0"),
                    py::arg("t_width"), py::arg("tau"), py::arg("t0"))
        .def("scaled_to", &Protocol::scaled_to, py::arg("new_t0"))
        .def_readonly("omega0", &Protocol::omega0)
        .def_readonly("t0", &Protocol::t0)
        .def_readonly("tau", &Protocol::tau)
        .def_readonly("t_width", &Protocol::t_width)
        .def_property_readonly("kind", &Protocol::kind_name)
        .def("__repr__", [](const Protocol& p) {
            return "<Protocol " + p.kind_name() + " omega0=" + std::to_string(p.omega0) +
                   " t0=" + std::to_string(p.t0) + ">";
        });

    py::class_<DriveSample>(m, "DriveSample")
        .def_readonly("omega_p", &DriveSample::omega_p)
        .def_readonly("omega_s", &DriveSample::omega_s)
        .def_readonly("omega", &DriveSample::omega)
        .def_readonly("theta", &DriveSample::theta)
        .def_readonly("theta_dot", &DriveSample::theta_dot);

    m.def("sample", &sample, py::arg("protocol"), py::arg("t"));
    m.def("theta_dot_gaussian", &theta_dot_gaussian, py::arg("protocol"), py::arg("t"));

    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init([](const Protocol& protocol, double gamma, double delta, double dt,
                         long sample_stride) {
                 SimConfig cfg{protocol, gamma, delta, dt, sample_stride};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("protocol"), py::arg("gamma"), py::arg("delta") = 0.0, py::arg("dt") = 0.0,
             py::arg("sample_stride") = 0)
        .def_readonly("protocol", &SimConfig::protocol)
        .def_readonly("gamma", &SimConfig::gamma)
        .def_readonly("delta", &SimConfig::delta)
        .def_property_readonly("dt_effective", &SimConfig::dt_effective)
        .def_property_readonly("steps", &SimConfig::steps);

    py::class_<Certification>(m, "Certification")
        .def_readonly("max_trace_err", &Certification::max_trace_err)
        .def_readonly("max_herm_defect", &Certification::max_herm_defect)
        .def_readonly("min_eigenvalue", &Certification::min_eigenvalue)
        .def_readonly("max_leakage", &Certification::max_leakage)
        .def_readonly("dt_used", &Certification::dt_used)
        .def_readonly("steps", &Certification::steps);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("trace_err", &Trajectory::trace_err)
        .def_readonly("purity", &Trajectory::purity)
        .def_readonly("cert", &Trajectory::cert)
        .def_property_readonly("frame",
                               [](const Trajectory& t) {
                                   return t.frame == Frame::Bare ? "bare" : "adiabatic";
                               })
        .def_property_readonly("states", &states_to_py);

    m.def("evolve_bare",
          [](const SimConfig& cfg) { return evolve_bare(cfg); }, py::arg("config"));
    m.def("evolve_adiabatic",
          [](const SimConfig& cfg) { return evolve_adiabatic(cfg); }, py::arg("config"));
    m.def("evolve_full8", &evolve_full8, py::arg("config"));

    py::class_<ReducedState>(m, "ReducedState")
        .def_readonly("rho_dd", &ReducedState::rho_dd)
        .def_readonly("a", &ReducedState::a)
        .def_readonly("b", &ReducedState::b);

    py::class_<ReducedTrajectory>(m, "ReducedTrajectory")
        .def_readonly("times", &ReducedTrajectory::times)
        .def_readonly("states", &ReducedTrajectory::states)
        .def_property_readonly("rho_dd", [](const ReducedTrajectory& t) {
            std::vector<double> out;
            out.reserve(t.states.size());
            for (const ReducedState& s : t.states) out.push_back(s.rho_dd);
            return out;
        });

    m.def("evolve_reduced", &evolve_reduced, py::arg("config"));
    m.def("analytic_rho_dd", &analytic_rho_dd, py::arg("t"), py::arg("gamma"),
          py::arg("theta_dot"), py::arg("omega"));

    py::class_<EfficiencyReport>(m, "EfficiencyReport")
        .def_readonly("rho33_final", &EfficiencyReport::rho33_final)
        .def_readonly("chi", &EfficiencyReport::chi)
        .def_readonly("exponent", &EfficiencyReport::exponent)
        .def_readonly("adiabatic_margin_1", &EfficiencyReport::adiabatic_margin_1)
        .def_readonly("adiabatic_margin_2", &EfficiencyReport::adiabatic_margin_2);

    m.def("transfer_efficiency", &transfer_efficiency, py::arg("gamma"), py::arg("omega0"),
          py::arg("t0"));
    m.def("classical_reference", &classical_reference, py::arg("gamma13"), py::arg("protocol"));
    m.def("adiabatic_margins", &adiabatic_margins, py::arg("config"));

    m.def("final_rho33", &final_rho33, py::arg("trajectory"), py::arg("protocol"));
    m.def("final_rho_dd", &final_rho_dd, py::arg("trajectory"), py::arg("protocol"));
    m.def("rho_dd_series", &rho_dd_series, py::arg("trajectory"), py::arg("protocol"));
    m.def("bare_populations", &bare_populations, py::arg("trajectory"), py::arg("protocol"));
}
