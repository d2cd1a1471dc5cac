#include "corofin/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <ostream>
#include <sstream>

#include "corofin/errors.hpp"
#include "corofin/io.hpp"

namespace corofin {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) {
    throw Error(ErrorCode::invalid_input, "sweep spec: " + what);
}

SweepAxis axis_from(const std::string& name) {
    for (SweepAxis a : {SweepAxis::n_crossbeams, SweepAxis::top_angle, SweepAxis::inclination,
                        SweepAxis::connection}) {
        if (name == to_string(a)) return a;
    }
    bad("unknown axis \"" + name + "\"");
}

double numeric(const json& v, const char* what) {
    if (!v.is_number()) bad(std::string(what) + " must be a number");
    return v.get<double>();
}

// Study positions sorted so that the expected trends read "along ascending
// axis value" (simple before rigid for connections).
std::vector<std::size_t> trend_order(const SweepSpec& spec) {
    std::vector<std::size_t> order(spec.n_variants());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (spec.axis == SweepAxis::connection) {
            return spec.connections[a] == Connection::simple &&
                   spec.connections[b] == Connection::rigid;
        }
        return spec.values[a] < spec.values[b];
    });
    return order;
}

SweepRow row_for(const FinRayModel& m, const SolveResult& res, double load, int rank) {
    SweepRow row;
    row.load = load;
    row.node = rank;
    row.converged = res.completed();
    row.iterations = res.mean_iterations();
    const int node = m.contact_nodes[static_cast<std::size_t>(rank - 1)];
    if (res.completed()) {
        const Eigen::VectorXd u = res.final_displacement(m.structure.n_dof());
        row.u = u[dof_of(node, Component::u)];
        row.w = u[dof_of(node, Component::w)];
        row.theta = u[dof_of(node, Component::theta)];
    } else {
        row.u = row.w = row.theta = std::nan("");
    }
    return row;
}

VariantResult run_variant(const SweepSpec& spec, std::size_t k, bool probe) {
    VariantResult out;
    out.label = spec.label(k);
    out.params = spec.params(k);
    const FinRayModel model = generate(out.params);
    const int n_contact = static_cast<int>(model.contact_nodes.size());

    std::vector<int> report = spec.report_nodes.empty() ? std::vector<int>{spec.load_node}
                                                        : spec.report_nodes;
    for (int rank : report) {
        if (rank < 1 || rank > n_contact) {
            throw Error(ErrorCode::unknown_contact_node,
                        "variant " + out.label + " has no contact node " + std::to_string(rank));
        }
    }

    for (double f : spec.magnitudes) {
        const SolveResult res =
            solve(model.structure, load_at_contact_node(model, spec.load_node, f), spec.solver);
        for (int rank : report) out.rows.push_back(row_for(model, res, f, rank));
        out.load_displacement.push_back(row_for(model, res, f, spec.load_node).displacement());
    }

    if (probe) {
        const LoadCase unit = load_at_contact_node(model, spec.load_node, 1.0);
        auto holds = [&](double f) {
            return solve(model.structure, unit.scaled(f), spec.solver).completed();
        };
        if (!holds(spec.probe.f_lo)) {
            out.probe = ProbeOutcome::below_lo;
        } else if (holds(spec.probe.f_hi)) {
            out.probe = ProbeOutcome::censored;
        } else {
            out.probe = ProbeOutcome::found;
            out.max_force = probe_max_force(model.structure, unit, spec.solver, spec.probe.f_lo,
                                            spec.probe.f_hi, spec.probe.resolution);
        }
    }
    return out;
}

// Ordering of two probe outcomes: +1 if b is certainly larger than a, -1 if
// certainly smaller or equal, 0 if undecidable.
int force_step(const VariantResult& a, const VariantResult& b) {
    const bool a_found = a.probe == ProbeOutcome::found;
    const bool b_found = b.probe == ProbeOutcome::found;
    const bool a_cens = a.probe == ProbeOutcome::censored;
    const bool b_cens = b.probe == ProbeOutcome::censored;
    const bool a_low = a.probe == ProbeOutcome::below_lo;
    const bool b_low = b.probe == ProbeOutcome::below_lo;
    if (a_found && b_found) return b.max_force > a.max_force ? 1 : -1;
    if ((a_found || a_low) && b_cens) return 1;
    if (a_low && b_found) return 1;
    if (a_cens && (b_found || b_low)) return -1;
    if (a_found && b_low) return -1;
    return 0;
}

std::string force_text(const VariantResult& v, const ProbeSettings& p) {
    switch (v.probe) {
        case ProbeOutcome::found: return io::format_number(v.max_force);
        case ProbeOutcome::censored: return ">=" + io::format_number(p.f_hi);
        case ProbeOutcome::below_lo: return "<" + io::format_number(p.f_lo);
        case ProbeOutcome::not_run: break;
    }
    return "";
}

TrendCheck check_force(const SweepReport& r, const std::vector<std::size_t>& order) {
    TrendCheck t{"max_force", "ascending", Verdict::holds, ""};
    bool open = false;
    std::ostringstream detail;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const VariantResult& v = r.variants[order[i]];
        detail << (i ? " < " : "") << v.label << ":" << force_text(v, r.spec.probe);
        if (i == 0) continue;
        const int step = force_step(r.variants[order[i - 1]], v);
        if (step < 0) t.verdict = Verdict::violated;
        if (step == 0) open = true;
    }
    if (t.verdict == Verdict::holds && open) t.verdict = Verdict::undetermined;
    t.detail = detail.str();
    return t;
}

TrendCheck check_displacement(const SweepReport& r, const std::vector<std::size_t>& order) {
    const std::string expected = expected_displacement_trend(r.spec.axis);
    const bool ascending = expected == "ascending";
    TrendCheck t{"displacement", expected, Verdict::holds, ""};
    bool open = false;
    std::ostringstream detail;
    for (std::size_t m = 0; m < r.spec.magnitudes.size(); ++m) {
        detail << (m ? "; " : "") << io::format_number(r.spec.magnitudes[m]) << " N:";
        for (std::size_t i = 0; i < order.size(); ++i) {
            const double d = r.variants[order[i]].load_displacement[m];
            detail << ' ' << r.variants[order[i]].label << '=' << io::format_number(d);
            if (i == 0) continue;
            const double prev = r.variants[order[i - 1]].load_displacement[m];
            if (std::isnan(d) || std::isnan(prev)) {
                open = true;
            } else if (ascending ? !(d > prev) : !(d < prev)) {
                t.verdict = Verdict::violated;
            }
        }
    }
    if (t.verdict == Verdict::holds && open) t.verdict = Verdict::undetermined;
    t.detail = detail.str();
    return t;
}

}  // namespace

const char* to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::n_crossbeams: return "n_crossbeams";
        case SweepAxis::top_angle: return "top_angle";
        case SweepAxis::inclination: return "inclination";
        case SweepAxis::connection: return "connection";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        case Verdict::undetermined: return "undetermined";
    }
    return "?";
}

const char* expected_displacement_trend(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::n_crossbeams: return "descending";
        case SweepAxis::top_angle: return "ascending";
        case SweepAxis::inclination: return "ascending";
        case SweepAxis::connection: return "descending";
    }
    return "?";
}

double SweepRow::displacement() const { return std::hypot(u, w); }

std::size_t SweepSpec::n_variants() const {
    return axis == SweepAxis::connection ? connections.size() : values.size();
}

std::string SweepSpec::label(std::size_t k) const {
    if (axis == SweepAxis::connection) return io::to_string(connections.at(k));
    return io::format_number(values.at(k));
}

FinRayParams SweepSpec::params(std::size_t k) const {
    FinRayParams p = base;
    switch (axis) {
        case SweepAxis::n_crossbeams: p.n_crossbeams = static_cast<int>(values.at(k)); break;
        case SweepAxis::top_angle: p.top_angle = values.at(k); break;
        case SweepAxis::inclination: p.inclination = values.at(k); break;
        case SweepAxis::connection: p.connection = connections.at(k); break;
    }
    return p;
}

void SweepSpec::validate() const {
    if (n_variants() == 0) bad("the axis has no values");
    if (axis != SweepAxis::connection && !connections.empty()) bad("connections given for a numeric axis");
    if (axis == SweepAxis::n_crossbeams) {
        for (double v : values) {
            if (v != std::floor(v) || v < 0) bad("crossbeam counts must be non-negative integers");
        }
    }
    if (magnitudes.empty()) bad("no load magnitudes");
    for (std::size_t i = 0; i < magnitudes.size(); ++i) {
        if (!(magnitudes[i] > 0.0) || !std::isfinite(magnitudes[i])) bad("magnitudes must be positive");
        if (i > 0 && !(magnitudes[i] > magnitudes[i - 1])) bad("magnitudes must be ascending");
    }
    if (load_node < 1) bad("load_node is a 1-based rank");
    for (int r : report_nodes) {
        if (r < 1) bad("report_nodes are 1-based ranks");
    }
    if (!(probe.resolution > 0.0) || !(probe.f_lo >= 0.0) || !(probe.f_hi > probe.f_lo)) {
        bad("probe needs 0 <= f_lo < f_hi and resolution > 0");
    }
    solver.validate();
    for (std::size_t k = 0; k < n_variants(); ++k) params(k).validate();
}

SweepSpec sweep_spec_from_json(const json& doc) {
    if (!doc.is_object()) bad("expected a JSON object");
    for (const auto& [key, _] : doc.items()) {
        static const std::vector<std::string> known{"axis",  "values", "load_node", "magnitudes",
                                                    "report_nodes", "base", "solver", "probe"};
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            bad("unknown field \"" + key + "\"");
        }
    }
    SweepSpec spec;
    if (!doc.contains("axis") || !doc["axis"].is_string()) bad("missing axis name");
    spec.axis = axis_from(doc["axis"].get<std::string>());

    if (!doc.contains("values") || !doc["values"].is_array()) bad("missing values array");
    for (const json& v : doc["values"]) {
        if (spec.axis == SweepAxis::connection) {
            if (!v.is_string()) bad("connection values must be strings");
            spec.connections.push_back(io::connection_from_string(v.get<std::string>()));
        } else {
            spec.values.push_back(numeric(v, "axis value"));
        }
    }
    if (doc.contains("load_node")) {
        if (!doc["load_node"].is_number_integer()) bad("load_node must be an integer");
        spec.load_node = doc["load_node"].get<int>();
    }
    if (!doc.contains("magnitudes") || !doc["magnitudes"].is_array()) bad("missing magnitudes array");
    for (const json& v : doc["magnitudes"]) spec.magnitudes.push_back(numeric(v, "magnitude"));
    if (doc.contains("report_nodes")) {
        if (!doc["report_nodes"].is_array()) bad("report_nodes must be an array");
        for (const json& v : doc["report_nodes"]) {
            if (!v.is_number_integer()) bad("report_nodes must be integers");
            spec.report_nodes.push_back(v.get<int>());
        }
    }
    if (doc.contains("base")) spec.base = io::finray_params_from_json(doc["base"]);
    if (doc.contains("solver")) spec.solver = io::solver_config_from_json(doc["solver"]);
    if (doc.contains("probe")) {
        const json& p = doc["probe"];
        if (!p.is_object()) bad("probe must be an object");
        for (const auto& [key, v] : p.items()) {
            if (key == "f_lo") spec.probe.f_lo = numeric(v, "f_lo");
            else if (key == "f_hi") spec.probe.f_hi = numeric(v, "f_hi");
            else if (key == "resolution") spec.probe.resolution = numeric(v, "resolution");
            else bad("unknown probe field \"" + key + "\"");
        }
    }
    spec.validate();
    return spec;
}

SweepReport run_sweep(const SweepSpec& spec, bool probe_max_force, bool parallel) {
    spec.validate();
    SweepReport report;
    report.spec = spec;
    const std::size_t n = spec.n_variants();
    if (parallel) {
        std::vector<std::future<VariantResult>> jobs;
        for (std::size_t k = 0; k < n; ++k) {
            jobs.push_back(std::async(std::launch::async, run_variant, std::cref(spec), k,
                                      probe_max_force));
        }
        for (auto& job : jobs) report.variants.push_back(job.get());
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            report.variants.push_back(run_variant(spec, k, probe_max_force));
        }
    }

    const std::vector<std::size_t> order = trend_order(spec);
    if (probe_max_force) report.trends.push_back(check_force(report, order));
    report.trends.push_back(check_displacement(report, order));

    if (spec.axis == SweepAxis::connection) {
        const auto find = [&](Connection c) -> const VariantResult* {
            for (std::size_t k = 0; k < n; ++k) {
                if (spec.connections[k] == c) return &report.variants[k];
            }
            return nullptr;
        };
        const VariantResult* simple = find(Connection::simple);
        const VariantResult* rigid = find(Connection::rigid);
        if (simple && rigid) {
            for (std::size_t m = 0; m < spec.magnitudes.size(); ++m) {
                report.displacement_ratio.push_back(simple->load_displacement[m] /
                                                    rigid->load_displacement[m]);
            }
        }
    }
    return report;
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
    out << "variant,load,node,u,w,theta,converged,iterations,max_force\n";
    for (const VariantResult& v : report.variants) {
        const std::string force = force_text(v, report.spec.probe);
        for (const SweepRow& row : v.rows) {
            out << v.label << ',' << io::format_number(row.load) << ',' << row.node << ','
                << io::format_number(row.u) << ',' << io::format_number(row.w) << ','
                << io::format_number(row.theta) << ',' << (row.converged ? "true" : "false")
                << ',' << io::format_number(row.iterations) << ',' << force << '\n';
        }
    }
}

json sweep_summary(const SweepReport& report) {
    json variants = json::array();
    for (const VariantResult& v : report.variants) {
        json entry{{"label", v.label}, {"params", io::to_json(v.params)}};
        int diverged = 0;
        for (const SweepRow& row : v.rows) diverged += !row.converged;
        entry["diverged_rows"] = diverged;
        switch (v.probe) {
            case ProbeOutcome::found: entry["max_force"] = v.max_force; break;
            case ProbeOutcome::censored: entry["max_force_at_least"] = report.spec.probe.f_hi; break;
            case ProbeOutcome::below_lo: entry["max_force_below"] = report.spec.probe.f_lo; break;
            case ProbeOutcome::not_run: break;
        }
        variants.push_back(entry);
    }
    json trends = json::array();
    for (const TrendCheck& t : report.trends) {
        trends.push_back({{"property", t.property},
                          {"expected", t.expected},
                          {"verdict", to_string(t.verdict)},
                          {"detail", t.detail}});
    }
    json doc{{"axis", to_string(report.spec.axis)},
             {"load_node", report.spec.load_node},
             {"magnitudes", report.spec.magnitudes},
             {"variants", variants},
             {"trends", trends}};
    if (!report.displacement_ratio.empty()) {
        json ratios = json::array();
        for (double r : report.displacement_ratio) {
            ratios.push_back(std::isnan(r) ? json(nullptr) : json(r));
        }
        doc["simple_rigid_displacement_ratio"] = ratios;
    }
    return doc;
}

}  // namespace corofin
