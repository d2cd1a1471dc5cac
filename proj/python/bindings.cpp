#include <sstream>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "corofin/errors.hpp"
#include "corofin/finray.hpp"
#include "corofin/io.hpp"
#include "corofin/solver.hpp"
#include "corofin/sweep.hpp"

namespace py = pybind11;
using namespace corofin;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::invalid_input, std::string("malformed JSON: ") + e.what());
    }
}

SolverConfig make_config(int n_inc, double tolerance, int maxiter, bool stop_on_unstable) {
    SolverConfig cfg;
    cfg.n_inc = n_inc;
    cfg.tolerance = tolerance;
    cfg.maxiter = maxiter;
    cfg.stop_on_unstable_tangent = stop_on_unstable;
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Co-rotational beam solver and Fin-Ray finger generator (JSON in, results out)";

    // Messages start with the error code name, e.g. "InvalidInput: ...".
    py::register_exception<Error>(m, "CorofinError", PyExc_ValueError);

    py::class_<IncrementRecord>(m, "IncrementRecord")
        .def_readonly("increment", &IncrementRecord::increment)
        .def_readonly("displacement", &IncrementRecord::displacement)
        .def_readonly("iterations", &IncrementRecord::iterations)
        .def_readonly("residual_norm", &IncrementRecord::residual_norm)
        .def_readonly("converged", &IncrementRecord::converged);

    py::class_<SolveResult>(m, "SolveResult")
        .def_property_readonly("completed", &SolveResult::completed)
        .def_readonly("increments", &SolveResult::increments)
        .def_readonly("diverged_at", &SolveResult::diverged_at)
        .def_property_readonly("cause",
                               [](const SolveResult& r) { return std::string(to_string(r.cause)); })
        .def_readonly("failed", &SolveResult::failed)
        .def_property_readonly("mean_iterations", &SolveResult::mean_iterations);

    m.def(
        "generate",
        [](const std::string& params_json) {
            const FinRayModel model = generate(io::finray_params_from_json(parse(params_json)));
            return io::to_json(model).dump();
        },
        py::arg("params_json"), "FinRayParams JSON -> model JSON (structure plus contact_nodes)");

    m.def(
        "contact_load",
        [](const std::string& params_json, int rank, double magnitude) {
            const FinRayModel model = generate(io::finray_params_from_json(parse(params_json)));
            return io::to_json(load_at_contact_node(model, rank, magnitude), model.structure).dump();
        },
        py::arg("params_json"), py::arg("rank"), py::arg("magnitude"),
        "Load JSON for a force along the inward normal at a contact node (1-based rank)");

    m.def(
        "solve",
        [](const std::string& structure_json, const std::string& load_json, int n_inc,
           double tolerance, int maxiter, bool stop_on_unstable_tangent) {
            const Structure s = io::structure_from_json(parse(structure_json));
            const LoadCase load = io::load_from_json(parse(load_json), s);
            const SolverConfig cfg = make_config(n_inc, tolerance, maxiter, stop_on_unstable_tangent);
            py::gil_scoped_release release;
            return solve(s, load, cfg);
        },
        py::arg("structure_json"), py::arg("load_json"), py::arg("n_inc") = 10,
        py::arg("tolerance") = 1e-3, py::arg("maxiter") = 100,
        py::arg("stop_on_unstable_tangent") = true);

    m.def(
        "solve_csv",
        [](const std::string& structure_json, const SolveResult& result) {
            const Structure s = io::structure_from_json(parse(structure_json));
            std::ostringstream out;
            io::write_solve_csv(out, s, result);
            return out.str();
        },
        py::arg("structure_json"), py::arg("result"));

    m.def(
        "probe_max_force",
        [](const std::string& structure_json, const std::string& load_json, double f_lo,
           double f_hi, double resolution, int n_inc, double tolerance, int maxiter) {
            const Structure s = io::structure_from_json(parse(structure_json));
            const LoadCase pattern = io::load_from_json(parse(load_json), s);
            const SolverConfig cfg = make_config(n_inc, tolerance, maxiter, true);
            py::gil_scoped_release release;
            return probe_max_force(s, pattern, cfg, f_lo, f_hi, resolution);
        },
        py::arg("structure_json"), py::arg("load_json"), py::arg("f_lo"), py::arg("f_hi"),
        py::arg("resolution"), py::arg("n_inc") = 10, py::arg("tolerance") = 1e-3,
        py::arg("maxiter") = 100, "Largest scale of the load pattern that still completes");

    m.def(
        "sweep",
        [](const std::string& spec_json, bool probe_max_force, bool parallel) {
            const SweepSpec spec = sweep_spec_from_json(parse(spec_json));
            SweepReport report;
            {
                py::gil_scoped_release release;
                report = run_sweep(spec, probe_max_force, parallel);
            }
            std::ostringstream csv;
            write_sweep_csv(csv, report);
            return py::make_tuple(csv.str(), sweep_summary(report).dump());
        },
        py::arg("spec_json"), py::arg("probe_max_force") = false, py::arg("parallel") = false,
        "Sweep spec JSON -> (CSV text, summary JSON)");
}
