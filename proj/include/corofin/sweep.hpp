#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corofin/finray.hpp"
#include "corofin/solver.hpp"

namespace corofin {

enum class SweepAxis { n_crossbeams, top_angle, inclination, connection };

const char* to_string(SweepAxis axis);

struct ProbeSettings {
    double f_lo = 0.05;       // N, must hold
    double f_hi = 10.0;       // N, expected to fail
    double resolution = 0.01; // N
};

// One design study. A variant is the base parameters with one axis value
// substituted; every variant is solved at every magnitude (a load of that
// size at contact node `load_node`, along the inward normal).
struct SweepSpec {
    SweepAxis axis = SweepAxis::n_crossbeams;
    std::vector<double> values;           // numeric axes, in study order
    std::vector<Connection> connections;  // connection axis, in study order
    int load_node = 2;                    // 1-based contact node rank
    std::vector<double> magnitudes;       // N, positive and ascending
    std::vector<int> report_nodes;        // contact node ranks; empty -> load_node
    FinRayParams base;
    SolverConfig solver;
    ProbeSettings probe;

    void validate() const;
    std::size_t n_variants() const;
    std::string label(std::size_t variant) const;
    FinRayParams params(std::size_t variant) const;
};

/// JSON layout:
///   {"axis": "n_crossbeams"|"top_angle"|"inclination"|"connection",
///    "values": [...], "load_node": 2, "magnitudes": [0.2, 0.4],
///    "report_nodes": [2, 3], "base": {FinRayParams}, "solver": {SolverConfig},
///    "probe": {"f_lo", "f_hi", "resolution"}}
/// Connection values are the strings "simple" and "rigid".
SweepSpec sweep_spec_from_json(const nlohmann::json& doc);

struct SweepRow {
    double load = 0.0;  // N
    int node = 0;       // contact node rank
    double u = 0.0;     // m
    double w = 0.0;     // m
    double theta = 0.0; // rad
    bool converged = false;
    double iterations = 0.0;  // mean corrector iterations per increment

    double displacement() const;
};

enum class ProbeOutcome {
    not_run,
    found,      // bracketed and bisected
    censored,   // still holds at f_hi; the true limit is larger
    below_lo,   // already fails at f_lo
};

struct VariantResult {
    std::string label;
    FinRayParams params;
    std::vector<SweepRow> rows;  // magnitude-major, then report node order
    std::vector<double> load_displacement;  // m, load node, per magnitude; nan if diverged
    ProbeOutcome probe = ProbeOutcome::not_run;
    double max_force = 0.0;      // N; meaningful when probe == found
};

enum class Verdict { holds, violated, undetermined };

const char* to_string(Verdict v);

struct TrendCheck {
    std::string property;  // "max_force" or "displacement"
    std::string expected;  // "ascending" or "descending" along the study order
    Verdict verdict = Verdict::undetermined;
    std::string detail;
};

struct SweepReport {
    SweepSpec spec;
    std::vector<VariantResult> variants;
    std::vector<TrendCheck> trends;
    /// Connection studies only: simple / rigid displacement at the load
    /// node, one value per magnitude (nan when either solve diverged).
    std::vector<double> displacement_ratio;
};

/// Runs every variant; with `parallel` set, variants run concurrently.
/// The result order follows the spec regardless of scheduling.
SweepReport run_sweep(const SweepSpec& spec, bool probe_max_force, bool parallel);

/// Expected displacement direction under equal load along the study order,
/// i.e. along ascending values (or simple before rigid).
const char* expected_displacement_trend(SweepAxis axis);

/// Columns: variant,load,node,u,w,theta,converged,iterations,max_force.
/// max_force is empty when probing was off, and `>=f_hi` or `<f_lo` for
/// censored probes.
void write_sweep_csv(std::ostream& out, const SweepReport& report);
nlohmann::json sweep_summary(const SweepReport& report);

}  // namespace corofin
