#pragma once

// JSON and CSV formats shared by the command-line tool and the Python
// module. Malformed documents raise Error(invalid_input).

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "corofin/finray.hpp"
#include "corofin/model.hpp"
#include "corofin/solver.hpp"

namespace corofin::io {

using nlohmann::json;

// Structure: {"nodes":[{"id","x","y"}],
//             "elements":[{"i","j","E","A","I","kind":"beam"|"pin-ended"}],
//             "supports":[{"node","u","w","theta"}]}
// Extra top-level keys (such as "contact_nodes") are ignored on input.
json to_json(const Structure& s);
Structure structure_from_json(const json& doc);

json to_json(const FinRayParams& p);
/// Missing fields keep their defaults; unknown fields are rejected.
FinRayParams finray_params_from_json(const json& doc);

/// Structure document plus "contact_nodes" (node ids, rank order).
json to_json(const FinRayModel& m);

// Load file: {"loads":[{"node", "u", "w", "theta"}]}, force components in N
// and N*m. Missing components are zero; repeated nodes accumulate.
LoadCase load_from_json(const json& doc, const Structure& s);
json to_json(const LoadCase& load, const Structure& s);

json to_json(const SolverConfig& c);
/// Missing fields keep their defaults; unknown fields are rejected.
SolverConfig solver_config_from_json(const json& doc);

const char* to_string(Connection c);
Connection connection_from_string(const std::string& name);

/// Shortest decimal that round-trips the value; locale independent.
std::string format_number(double v);

/// Header `increment,node,u,w,theta,residual_norm,iterations`, one row per
/// node and increment. A failed increment with a state follows the
/// converged ones; one that produced no state is written with `nan`
/// displacements and residual.
void write_solve_csv(std::ostream& out, const Structure& s, const SolveResult& result);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace corofin::io
