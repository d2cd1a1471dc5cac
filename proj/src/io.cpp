#include "corofin/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "corofin/errors.hpp"

namespace corofin::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::invalid_input, what); }

const json& member(const json& obj, const char* key, const char* where) {
    if (!obj.is_object()) bad(std::string(where) + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) bad(std::string(where) + ": missing field \"" + key + "\"");
    return *it;
}

double number(const json& v, const std::string& what) {
    if (!v.is_number()) bad(what + ": expected a number");
    return v.get<double>();
}

int integer(const json& v, const std::string& what) {
    if (!v.is_number_integer()) bad(what + ": expected an integer");
    return v.get<int>();
}

bool boolean(const json& v, const std::string& what) {
    if (!v.is_boolean()) bad(what + ": expected true or false");
    return v.get<bool>();
}

const json& array(const json& obj, const char* key, const char* where) {
    const json& v = member(obj, key, where);
    if (!v.is_array()) bad(std::string(where) + ": \"" + key + "\" must be an array");
    return v;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
    if (!obj.is_object()) bad(std::string(where) + ": expected an object");
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) bad(std::string(where) + ": unknown field \"" + key + "\"");
    }
}

const char* kind_name(ElementKind k) { return k == ElementKind::beam ? "beam" : "pin-ended"; }

ElementKind kind_from(const json& v) {
    if (!v.is_string()) bad("element kind must be a string");
    const std::string name = v.get<std::string>();
    if (name == "beam") return ElementKind::beam;
    if (name == "pin-ended") return ElementKind::pin_ended;
    bad("unknown element kind \"" + name + "\"");
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // also folds -0
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json to_json(const Structure& s) {
    json nodes = json::array();
    for (const Node& n : s.nodes()) nodes.push_back({{"id", n.id}, {"x", n.x0}, {"y", n.y0}});
    json elements = json::array();
    for (const Element& e : s.elements()) {
        elements.push_back({{"i", e.node_i},
                            {"j", e.node_j},
                            {"E", e.props.e_modulus},
                            {"A", e.props.area},
                            {"I", e.props.inertia},
                            {"kind", kind_name(e.props.kind)}});
    }
    json supports = json::array();
    for (int n = 0; n < static_cast<int>(s.n_nodes()); ++n) {
        const bool u = s.supports().is_fixed(n, Component::u);
        const bool w = s.supports().is_fixed(n, Component::w);
        const bool t = s.supports().is_fixed(n, Component::theta);
        if (u || w || t) supports.push_back({{"node", n}, {"u", u}, {"w", w}, {"theta", t}});
    }
    return {{"nodes", nodes}, {"elements", elements}, {"supports", supports}};
}

Structure structure_from_json(const json& doc) {
    if (!doc.is_object()) bad("structure: expected a JSON object");
    std::vector<Node> nodes;
    for (const json& n : array(doc, "nodes", "structure")) {
        nodes.push_back(Node{integer(member(n, "id", "node"), "node id"),
                             number(member(n, "x", "node"), "node x"),
                             number(member(n, "y", "node"), "node y")});
    }
    std::vector<ElementSpec> elements;
    for (const json& e : array(doc, "elements", "structure")) {
        ElementProps props;
        props.e_modulus = number(member(e, "E", "element"), "element E");
        props.area = number(member(e, "A", "element"), "element A");
        props.inertia = number(member(e, "I", "element"), "element I");
        props.kind = e.contains("kind") ? kind_from(e["kind"]) : ElementKind::beam;
        elements.push_back(ElementSpec{integer(member(e, "i", "element"), "element i"),
                                       integer(member(e, "j", "element"), "element j"), props});
    }
    SupportSet supports;
    if (doc.contains("supports")) {
        for (const json& f : array(doc, "supports", "structure")) {
            auto flag = [&](const char* key) {
                return f.contains(key) ? boolean(f[key], std::string("support ") + key) : false;
            };
            supports.fix(integer(member(f, "node", "support"), "support node"),
                         Fixity{flag("u"), flag("w"), flag("theta")});
        }
    }
    return build_structure(std::move(nodes), elements, std::move(supports));
}

const char* to_string(Connection c) { return c == Connection::simple ? "simple" : "rigid"; }

Connection connection_from_string(const std::string& name) {
    if (name == "simple") return Connection::simple;
    if (name == "rigid") return Connection::rigid;
    bad("unknown connection \"" + name + "\" (expected simple or rigid)");
}

json to_json(const FinRayParams& p) {
    return {{"width", p.width},
            {"height", p.height},
            {"n_crossbeams", p.n_crossbeams},
            {"top_angle", p.top_angle},
            {"inclination", p.inclination},
            {"connection", to_string(p.connection)},
            {"section_b", p.section_b},
            {"section_h", p.section_h},
            {"e_modulus", p.e_modulus},
            {"refinement", p.refinement}};
}

FinRayParams finray_params_from_json(const json& doc) {
    reject_unknown(doc,
                   {"width", "height", "n_crossbeams", "top_angle", "inclination", "connection",
                    "section_b", "section_h", "e_modulus", "refinement"},
                   "finray params");
    FinRayParams p;
    auto real = [&](const char* key, double& dst) {
        if (doc.contains(key)) dst = number(doc[key], key);
    };
    real("width", p.width);
    real("height", p.height);
    real("top_angle", p.top_angle);
    real("inclination", p.inclination);
    real("section_b", p.section_b);
    real("section_h", p.section_h);
    real("e_modulus", p.e_modulus);
    if (doc.contains("n_crossbeams")) p.n_crossbeams = integer(doc["n_crossbeams"], "n_crossbeams");
    if (doc.contains("refinement")) p.refinement = integer(doc["refinement"], "refinement");
    if (doc.contains("connection")) {
        if (!doc["connection"].is_string()) bad("connection must be a string");
        p.connection = connection_from_string(doc["connection"].get<std::string>());
    }
    p.validate();
    return p;
}

json to_json(const FinRayModel& m) {
    json doc = to_json(m.structure);
    doc["contact_nodes"] = m.contact_nodes;
    return doc;
}

LoadCase load_from_json(const json& doc, const Structure& s) {
    LoadCase load = LoadCase::zero(s);
    for (const json& entry : array(doc, "loads", "load file")) {
        reject_unknown(entry, {"node", "u", "w", "theta"}, "load entry");
        const int node = integer(member(entry, "node", "load entry"), "load node");
        if (node < 0 || node >= static_cast<int>(s.n_nodes())) {
            throw Error(ErrorCode::unknown_node, "load on unknown node " + std::to_string(node));
        }
        for (Component c : {Component::u, Component::w, Component::theta}) {
            const char* key = c == Component::u ? "u" : (c == Component::w ? "w" : "theta");
            if (entry.contains(key)) load.f_total[dof_of(node, c)] += number(entry[key], key);
        }
    }
    validate_load(s, load);
    return load;
}

json to_json(const LoadCase& load, const Structure& s) {
    json loads = json::array();
    for (int n = 0; n < static_cast<int>(s.n_nodes()); ++n) {
        const double u = load.f_total[dof_of(n, Component::u)];
        const double w = load.f_total[dof_of(n, Component::w)];
        const double t = load.f_total[dof_of(n, Component::theta)];
        if (u != 0.0 || w != 0.0 || t != 0.0) {
            loads.push_back({{"node", n}, {"u", u}, {"w", w}, {"theta", t}});
        }
    }
    return {{"loads", loads}};
}

json to_json(const SolverConfig& c) {
    return {{"n_inc", c.n_inc},
            {"tolerance", c.tolerance},
            {"maxiter", c.maxiter},
            {"stop_on_unstable_tangent", c.stop_on_unstable_tangent}};
}

SolverConfig solver_config_from_json(const json& doc) {
    reject_unknown(doc, {"n_inc", "tolerance", "maxiter", "stop_on_unstable_tangent"},
                   "solver config");
    SolverConfig c;
    if (doc.contains("n_inc")) c.n_inc = integer(doc["n_inc"], "n_inc");
    if (doc.contains("tolerance")) c.tolerance = number(doc["tolerance"], "tolerance");
    if (doc.contains("maxiter")) c.maxiter = integer(doc["maxiter"], "maxiter");
    if (doc.contains("stop_on_unstable_tangent")) {
        c.stop_on_unstable_tangent =
            boolean(doc["stop_on_unstable_tangent"], "stop_on_unstable_tangent");
    }
    c.validate();
    return c;
}

void write_solve_csv(std::ostream& out, const Structure& s, const SolveResult& result) {
    out << "increment,node,u,w,theta,residual_norm,iterations\n";
    auto rows = [&](const IncrementRecord& rec) {
        for (int n = 0; n < static_cast<int>(s.n_nodes()); ++n) {
            out << rec.increment << ',' << n << ','
                << format_number(rec.displacement[dof_of(n, Component::u)]) << ','
                << format_number(rec.displacement[dof_of(n, Component::w)]) << ','
                << format_number(rec.displacement[dof_of(n, Component::theta)]) << ','
                << format_number(rec.residual_norm) << ',' << rec.iterations << '\n';
        }
    };
    for (const IncrementRecord& rec : result.increments) rows(rec);
    if (result.completed()) return;
    if (result.failed) {
        rows(*result.failed);
        return;
    }
    IncrementRecord blank;
    blank.increment = result.diverged_at;
    blank.displacement = Eigen::VectorXd::Constant(s.n_dof(), std::nan(""));
    blank.residual_norm = std::nan("");
    rows(blank);
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        bad(path.string() + ": malformed JSON (" + e.what() + ")");
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot write " + path.string());
    out << text;
    if (!out) bad("write failed for " + path.string());
}

}  // namespace corofin::io
