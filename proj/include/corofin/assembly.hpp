#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "corofin/corotational.hpp"
#include "corofin/model.hpp"

namespace corofin {

/// Member data of one element at a given global displacement.
struct ElementState {
    ElementGeometry geometry;
    LocalForces forces;
};

/// One ElementState per element, ordered by element index.
using ElementStateSet = std::vector<ElementState>;

struct MemberData {
    ElementStateSet states;
    Eigen::VectorXd f_int;  // assembled global internal forces, length n_dof
};

/// Gathers each element's DOFs from `u`, evaluates the co-rotational chain
/// and scatter-adds the element internal forces. A degenerate element is
/// reported as Error(degenerate_element) carrying the element index.
MemberData update_member_data(const Structure& s, const Eigen::VectorXd& u);

/// Global tangent stiffness, element matrices scatter-added by DOF index.
Eigen::MatrixXd assemble_tangent(const Structure& s, const ElementStateSet& states);

/// Same as above with an explicit element visiting order (a permutation of
/// 0..n_elements-1).
Eigen::MatrixXd assemble_tangent(const Structure& s, const ElementStateSet& states,
                                 std::span<const std::size_t> order);

/// Zeroes the row and column of every constrained DOF and puts 1 on the
/// diagonal, so the solved increment is exactly zero there.
Eigen::MatrixXd apply_supports(Eigen::MatrixXd k, const SupportSet& supports);

/// Relative pivot magnitude below which solve_linear reports a singular matrix.
inline constexpr double kSingularPivotRatio = 1e-12;

/// Dense LU with partial pivoting. Throws Error(singular_matrix) when a
/// pivot falls below kSingularPivotRatio times the largest |K_s| entry.
Eigen::VectorXd solve_linear(const Eigen::MatrixXd& k_s, const Eigen::VectorXd& rhs);

}  // namespace corofin
