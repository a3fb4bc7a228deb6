#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpfranson/analysis.hpp"
#include "gpfranson/montecarlo.hpp"
#include "gpfranson/polarization.hpp"
#include "gpfranson/twophoton.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "double-pass interferometer simulation core";

    using namespace gpf;

    py::class_<twophoton::SourceModel>(m, "SourceModel")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("k0"),
             py::arg("pump_coherence_length"), py::arg("si_coherence_length"))
        .def_readonly("k0", &twophoton::SourceModel::k0)
        .def_readonly("pump_coherence_length",
                      &twophoton::SourceModel::pump_coherence_length)
        .def_readonly("si_coherence_length",
                      &twophoton::SourceModel::si_coherence_length);

    py::class_<twophoton::SetupConfig>(m, "SetupConfig")
        .def(py::init<>())
        .def_readwrite("x_s", &twophoton::SetupConfig::x_s)
        .def_readwrite("x_i", &twophoton::SetupConfig::x_i)
        .def_readwrite("beta_s", &twophoton::SetupConfig::beta_s)
        .def_readwrite("beta_i", &twophoton::SetupConfig::beta_i)
        .def_readwrite("source", &twophoton::SetupConfig::source)
        .def_readwrite("rate_constant", &twophoton::SetupConfig::rate_constant)
        .def_readwrite("visibility_factor",
                       &twophoton::SetupConfig::visibility_factor);

    m.def("loop_phase", &polarization::loop_phase, py::arg("beta"),
          "accumulated phase of an H state through the double-pass loop");
    m.def(
        "solid_angle_for_loop",
        [](double beta) {
            return polarization::solid_angle(
                polarization::circuit_for_loop(beta));
        },
        py::arg("beta"), "signed solid angle of the loop's Poincare circuit");
    m.def(
        "geometric_phase_for_loop",
        [](double beta) {
            return polarization::geometric_phase(
                polarization::circuit_for_loop(beta));
        },
        py::arg("beta"), "Pancharatnam phase of the loop's Poincare circuit");

    m.def("coincidence_rate", &twophoton::coincidence_rate, py::arg("config"));
    m.def("reduced_rate", &twophoton::reduced_rate, py::arg("config"));

    py::enum_<montecarlo::ScanVariable>(m, "ScanVariable")
        .value("two_beta_s", montecarlo::ScanVariable::two_beta_s)
        .value("two_beta_i", montecarlo::ScanVariable::two_beta_i)
        .value("x_s", montecarlo::ScanVariable::x_s)
        .value("x_i", montecarlo::ScanVariable::x_i);

    py::class_<montecarlo::ScanSpec>(m, "ScanSpec")
        .def(py::init<>())
        .def_readwrite("variable", &montecarlo::ScanSpec::variable)
        .def_readwrite("points", &montecarlo::ScanSpec::points)
        .def_readwrite("dwell_time", &montecarlo::ScanSpec::dwell_time)
        .def_readwrite("seed", &montecarlo::ScanSpec::seed);

    py::class_<montecarlo::FringeScan>(m, "FringeScan")
        .def_readonly("spec", &montecarlo::FringeScan::spec)
        .def_readonly("base_config", &montecarlo::FringeScan::base_config)
        .def_readonly("counts", &montecarlo::FringeScan::counts);

    m.def("run_scan", &montecarlo::run_scan, py::arg("base"), py::arg("spec"));

    py::class_<analysis::FringeFit>(m, "FringeFit")
        .def_readonly("offset", &analysis::FringeFit::offset)
        .def_readonly("amplitude", &analysis::FringeFit::amplitude)
        .def_readonly("phase", &analysis::FringeFit::phase)
        .def_readonly("visibility", &analysis::FringeFit::visibility)
        .def_readonly("covariance", &analysis::FringeFit::covariance)
        .def_readonly("sigma_visibility",
                      &analysis::FringeFit::sigma_visibility)
        .def_readonly("sigma_phase", &analysis::FringeFit::sigma_phase);

    py::class_<analysis::BellResult>(m, "BellResult")
        .def_readonly("S", &analysis::BellResult::S)
        .def_readonly("sigma_S", &analysis::BellResult::sigma_S)
        .def_readonly("violation_sigmas",
                      &analysis::BellResult::violation_sigmas)
        .def_readonly("pooled_visibility",
                      &analysis::BellResult::pooled_visibility)
        .def_readonly("sigma_pooled_visibility",
                      &analysis::BellResult::sigma_pooled_visibility)
        .def_readonly("degenerate", &analysis::BellResult::degenerate)
        .def_readonly("phase_residuals",
                      &analysis::BellResult::phase_residuals);

    py::class_<analysis::BellExperiment>(m, "BellExperiment")
        .def_readonly("scans", &analysis::BellExperiment::scans)
        .def_readonly("fits", &analysis::BellExperiment::fits)
        .def_readonly("result", &analysis::BellExperiment::result);

    m.def(
        "fit_fringe",
        [](const std::vector<double>& x, const std::vector<double>& y,
           double angular_frequency) {
            return analysis::fit_fringe(x, y, angular_frequency);
        },
        py::arg("x"), py::arg("y"), py::arg("angular_frequency") = 1.0);
    m.def(
        "fit_scan",
        [](const montecarlo::FringeScan& scan, double angular_frequency) {
            return analysis::fit_fringe(scan, angular_frequency);
        },
        py::arg("scan"), py::arg("angular_frequency") = 1.0);
    m.def("s_from_visibility", &analysis::s_from_visibility,
          py::arg("visibility"));
    m.def("chsh_from_settings", &analysis::chsh_from_settings,
          py::arg("correlations"));
    m.def("run_bell_experiment", &analysis::run_bell_experiment,
          py::arg("base"), py::arg("points_per_scan"), py::arg("dwell_time"),
          py::arg("seed"));
}
