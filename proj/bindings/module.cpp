#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "helmholtz_dd/analysis.hpp"
#include "helmholtz_dd/mesh.hpp"
#include "helmholtz_dd/runner.hpp"

namespace py = pybind11;
using namespace helmdd;

PYBIND11_MODULE(_helmholtz_dd, m) {
    m.doc() = "One-level Schwarz preconditioners for heterogeneous Helmholtz problems";

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("k", &RunConfig::k)
        .def_readwrite("p", &RunConfig::p)
        .def_readwrite("eps_rule", &RunConfig::eps_rule)
        .def_readwrite("eta_mode", &RunConfig::eta_mode)
        .def_readwrite("strategy", &RunConfig::strategy)
        .def_readwrite("H_rule", &RunConfig::H_rule)
        .def_readwrite("overlap_rule", &RunConfig::overlap_rule)
        .def_readwrite("precond", &RunConfig::precond)
        .def_readwrite("inner_product", &RunConfig::inner_product)
        .def_readwrite("A_profile", &RunConfig::A_profile)
        .def_readwrite("n_profile", &RunConfig::n_profile)
        .def_readwrite("cmin_A", &RunConfig::cmin_A)
        .def_readwrite("cmax_A", &RunConfig::cmax_A)
        .def_readwrite("cmin_n", &RunConfig::cmin_n)
        .def_readwrite("cmax_n", &RunConfig::cmax_n)
        .def_readwrite("tol", &RunConfig::tol)
        .def_readwrite("maxit", &RunConfig::maxit)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("fov", &RunConfig::fov)
        .def_readwrite("bounds", &RunConfig::bounds)
        .def_readwrite("angles", &RunConfig::angles)
        .def_readwrite("out", &RunConfig::out)
        .def("to_json", &RunConfig::to_json)
        .def_static("from_json", &RunConfig::from_json)
        .def("__repr__", [](const RunConfig& c) { return "RunConfig(" + c.to_json() + ")"; });

    py::class_<PhaseTimings>(m, "PhaseTimings")
        .def_readonly("assembly", &PhaseTimings::assembly)
        .def_readonly("factorization", &PhaseTimings::factorization)
        .def_readonly("solve", &PhaseTimings::solve);

    py::class_<FovPoint>(m, "FovPoint")
        .def_readonly("theta", &FovPoint::theta)
        .def_readonly("z", &FovPoint::z);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("config", &RunRecord::config)
        .def_readonly("dofs", &RunRecord::dofs)
        .def_readonly("subdomains", &RunRecord::subdomains)
        .def_readonly("iterations", &RunRecord::iterations)
        .def_readonly("converged", &RunRecord::converged)
        .def_readonly("residual_history", &RunRecord::residual_history)
        .def_readonly("e0", &RunRecord::e0)
        .def_readonly("e1", &RunRecord::e1)
        .def_readonly("fov_lower_bound", &RunRecord::fov_lower_bound)
        .def_readonly("dk_norm", &RunRecord::dk_norm)
        .def_readonly("fov", &RunRecord::fov)
        .def_readonly("timings", &RunRecord::timings)
        .def("to_json", &RunRecord::to_json);

    py::register_exception<SizeCapError>(m, "SizeCapError", PyExc_RuntimeError);

    m.def("run", &run, py::arg("config"),
          "Execute one experiment: mesh, assembly, decomposition, preconditioned GMRES.",
          py::call_guard<py::gil_scoped_release>());
    m.def("write_record", &write_record, py::arg("record"), py::arg("path"));
    m.def("estimated_dofs", &estimated_dofs, py::arg("config"));
    m.def("dof_cap", &dof_cap);
    m.def("sweep_table_ids", &sweep_table_ids);
    m.def("sweep", &sweep, py::arg("table_id"), py::arg("output_dir"),
          "Run every cell of a catalogued table; returns the summary rows.",
          py::call_guard<py::gil_scoped_release>());
    m.def("elman_predicted_iterations", &elman_predicted_iterations, py::arg("beta"),
          py::arg("C"), py::arg("tol"));
    m.def("build_coarse",
          [](double k, double alpha) { return build_coarse(k, alpha).M; },
          py::arg("k"), py::arg("alpha"),
          "Coarse squares per side for the rule H = 1/floor(k^alpha).");
}
