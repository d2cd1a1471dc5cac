#include "corofin/errors.hpp"

namespace corofin {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_input: return "InvalidInput";
        case ErrorCode::duplicate_node: return "DuplicateNode";
        case ErrorCode::dangling_element: return "DanglingElement";
        case ErrorCode::disconnected: return "Disconnected";
        case ErrorCode::unconstrained_structure: return "UnconstrainedStructure";
        case ErrorCode::unknown_node: return "UnknownNode";
        case ErrorCode::invalid_load: return "InvalidLoad";
        case ErrorCode::degenerate_element: return "DegenerateElement";
        case ErrorCode::singular_matrix: return "SingularMatrix";
        case ErrorCode::bracket_invalid: return "BracketInvalid";
        case ErrorCode::geometry_infeasible: return "GeometryInfeasible";
        case ErrorCode::unknown_contact_node: return "UnknownContactNode";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> element)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      element_(element) {}

}  // namespace corofin
