#include "corofin/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "corofin/errors.hpp"
#include "corofin/finray.hpp"
#include "corofin/io.hpp"
#include "corofin/solver.hpp"
#include "corofin/sweep.hpp"

namespace corofin::cli {

namespace fs = std::filesystem;

namespace {

std::shared_ptr<spdlog::logger> logger() {
    static const std::shared_ptr<spdlog::logger> log = [] {
        auto l = spdlog::get("corofin");
        if (!l) l = spdlog::stderr_color_mt("corofin");
        l->set_pattern("[%l] %v");
        l->set_level(spdlog::level::warn);
        if (const char* env = std::getenv("COROFIN_LOG_LEVEL")) {
            l->set_level(spdlog::level::from_str(env));
        }
        return l;
    }();
    return log;
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const nlohmann::json::exception& e) {
        err << "error (invalid_input): " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitInputError;
}

}  // namespace

fs::path summary_path(const fs::path& out_file) {
    fs::path p = out_file;
    return p.replace_extension(".summary.json");
}

int cmd_generate(const fs::path& params_file, const fs::path& out_file, std::ostream& err) {
    return guarded(err, [&] {
        const FinRayParams params = io::finray_params_from_json(io::read_json_file(params_file));
        const FinRayModel model = generate(params);
        logger()->info("generated {} nodes, {} elements, {} contact nodes",
                       model.structure.n_nodes(), model.structure.n_elements(),
                       model.contact_nodes.size());
        io::write_text_file(out_file, io::to_json(model).dump(2) + "\n");
        return kExitOk;
    });
}

int cmd_solve(const fs::path& structure_file, const fs::path& load_file,
              const SolveOptions& options, const fs::path& out_file, std::ostream& err) {
    return guarded(err, [&] {
        const Structure s = io::structure_from_json(io::read_json_file(structure_file));
        const LoadCase load = io::load_from_json(io::read_json_file(load_file), s);
        SolverConfig cfg;
        cfg.n_inc = options.n_inc;
        cfg.tolerance = options.tolerance;
        cfg.maxiter = options.maxiter;
        cfg.validate();

        const SolveResult res = solve(s, load, cfg);
        std::ostringstream csv;
        io::write_solve_csv(csv, s, res);
        io::write_text_file(out_file, csv.str());

        if (res.completed()) {
            logger()->info("completed {} increments, mean {} iterations", res.increments.size(),
                           res.mean_iterations());
            return kExitOk;
        }
        err << "diverged at increment " << res.diverged_at << " (" << to_string(res.cause)
            << ")\n";
        return kExitDiverged;
    });
}

int cmd_sweep(const fs::path& sweep_file, const fs::path& out_file, const SweepOptions& options,
              std::ostream& err) {
    return guarded(err, [&] {
        const SweepSpec spec = sweep_spec_from_json(io::read_json_file(sweep_file));
        logger()->info("sweeping {} over {} variants", to_string(spec.axis), spec.n_variants());
        const SweepReport report = run_sweep(spec, options.probe_max_force, options.parallel);

        std::ostringstream csv;
        write_sweep_csv(csv, report);
        io::write_text_file(out_file, csv.str());
        io::write_text_file(summary_path(out_file), sweep_summary(report).dump(2) + "\n");
        for (const TrendCheck& t : report.trends) {
            logger()->info("{} {}: {}", t.property, t.expected, to_string(t.verdict));
        }
        return kExitOk;
    });
}

int run(int argc, char** argv) {
    CLI::App app{"Co-rotational beam solver and Fin-Ray finger design studies", "corofin"};
    app.require_subcommand(1);

    std::string params_file, structure_file, load_file, sweep_file, out_file;
    SolveOptions solve_opts;
    SweepOptions sweep_opts;

    CLI::App* gen = app.add_subcommand("generate", "Build a Fin-Ray finger model from parameters");
    gen->add_option("params", params_file, "FinRayParams JSON")->required();
    gen->add_option("out", out_file, "Output model JSON")->required();

    CLI::App* sol = app.add_subcommand("solve", "Run an incremental Newton-Raphson solve");
    sol->add_option("structure", structure_file, "Structure JSON")->required();
    sol->add_option("load", load_file, "Load JSON")->required();
    sol->add_option("out", out_file, "Output CSV")->required();
    sol->add_option("--n-inc", solve_opts.n_inc, "Load increments")->capture_default_str();
    sol->add_option("--tolerance", solve_opts.tolerance, "Residual tolerance in N")
        ->capture_default_str();
    sol->add_option("--maxiter", solve_opts.maxiter, "Corrector iterations per increment")
        ->capture_default_str();

    CLI::App* swp = app.add_subcommand("sweep", "Run a design study");
    swp->add_option("spec", sweep_file, "SweepSpec JSON")->required();
    swp->add_option("out", out_file, "Output CSV")->required();
    swp->add_flag("--probe-max-force", sweep_opts.probe_max_force,
                  "Bisect the maximum allowable force of each variant");
    swp->add_flag("--parallel", sweep_opts.parallel, "Run variants concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInputError;
    }

    if (gen->parsed()) return cmd_generate(params_file, out_file, std::cerr);
    if (sol->parsed()) return cmd_solve(structure_file, load_file, solve_opts, out_file, std::cerr);
    return cmd_sweep(sweep_file, out_file, sweep_opts, std::cerr);
}

}  // namespace corofin::cli
