#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace corofin {

enum class ErrorCode {
    invalid_input,
    duplicate_node,
    dangling_element,
    disconnected,
    unconstrained_structure,
    unknown_node,
    invalid_load,
    degenerate_element,
    singular_matrix,
    bracket_invalid,
    geometry_infeasible,
    unknown_contact_node,
};

const char* to_string(ErrorCode code);

/// Single exception type for every modeling and numerical failure. The code
/// identifies the failure class; `element()` is set when a specific element
/// is at fault (degenerate geometry during assembly).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message,
          std::optional<std::size_t> element = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    std::optional<std::size_t> element() const noexcept { return element_; }

private:
    ErrorCode code_;
    std::optional<std::size_t> element_;
};

}  // namespace corofin
