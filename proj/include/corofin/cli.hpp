#pragma once

// Command implementations behind the `corofin` tool. Each returns the
// process exit code and reports problems on `err`.

#include <filesystem>
#include <iosfwd>

namespace corofin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitDiverged = 3;

struct SolveOptions {
    int n_inc = 10;
    double tolerance = 1e-3;
    int maxiter = 100;
};

struct SweepOptions {
    bool probe_max_force = false;
    bool parallel = false;
};

/// Params JSON in, model JSON (structure plus contact_nodes) out.
int cmd_generate(const std::filesystem::path& params_file, const std::filesystem::path& out_file,
                 std::ostream& err);

/// Writes the per-increment CSV; on divergence the partial history is
/// still written and the exit code is kExitDiverged.
int cmd_solve(const std::filesystem::path& structure_file, const std::filesystem::path& load_file,
              const SolveOptions& options, const std::filesystem::path& out_file,
              std::ostream& err);

/// Writes the sweep CSV to `out_file` and the JSON summary next to it
/// (see summary_path). Diverged variants are data, not errors.
int cmd_sweep(const std::filesystem::path& sweep_file, const std::filesystem::path& out_file,
              const SweepOptions& options, std::ostream& err);

/// `results.csv` -> `results.summary.json`.
std::filesystem::path summary_path(const std::filesystem::path& out_file);

/// Full command line entry point (subcommands generate, solve, sweep).
int run(int argc, char** argv);

}  // namespace corofin::cli
