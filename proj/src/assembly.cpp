#include "corofin/assembly.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "corofin/errors.hpp"

namespace corofin {

MemberData update_member_data(const Structure& s, const Eigen::VectorXd& u) {
    if (u.size() != s.n_dof()) {
        throw Error(ErrorCode::invalid_input, "displacement length " + std::to_string(u.size()) +
                                                  " != n_dof " + std::to_string(s.n_dof()));
    }
    MemberData out;
    out.states.reserve(s.n_elements());
    out.f_int = Eigen::VectorXd::Zero(s.n_dof());

    for (std::size_t e = 0; e < s.n_elements(); ++e) {
        const Element& el = s.elements()[e];
        const auto dofs = s.element_dofs(e);
        Vec6 p;
        for (int a = 0; a < 6; ++a) p[a] = u[dofs[a]];

        ElementGeometry g;
        try {
            g = current_geometry(el, p);
        } catch (const Error& err) {
            throw Error(ErrorCode::degenerate_element,
                        "element " + std::to_string(e) + " collapsed to zero length", e);
        }
        const LocalForces q = local_forces(el.props, el.l0, local_displacements(el, p, g));
        const Vec6 qg = global_internal_force(transformation_matrix(g), q);
        for (int a = 0; a < 6; ++a) out.f_int[dofs[a]] += qg[a];
        out.states.push_back(ElementState{g, q});
    }
    return out;
}

Eigen::MatrixXd assemble_tangent(const Structure& s, const ElementStateSet& states) {
    std::vector<std::size_t> order(s.n_elements());
    std::iota(order.begin(), order.end(), std::size_t{0});
    return assemble_tangent(s, states, order);
}

Eigen::MatrixXd assemble_tangent(const Structure& s, const ElementStateSet& states,
                                 std::span<const std::size_t> order) {
    if (states.size() != s.n_elements() || order.size() != s.n_elements()) {
        throw Error(ErrorCode::invalid_input, "element state set does not match structure");
    }
    Eigen::MatrixXd k = Eigen::MatrixXd::Zero(s.n_dof(), s.n_dof());
    for (std::size_t e : order) {
        const Element& el = s.elements().at(e);
        const Mat6 ke = element_tangent_stiffness(el.props, el.l0, states[e].geometry,
                                                  states[e].forces);
        const auto dofs = s.element_dofs(e);
        for (int a = 0; a < 6; ++a) {
            for (int b = 0; b < 6; ++b) k(dofs[a], dofs[b]) += ke(a, b);
        }
    }
    return k;
}

Eigen::MatrixXd apply_supports(Eigen::MatrixXd k, const SupportSet& supports) {
    for (int d : supports.constrained_dofs()) {
        if (d >= k.rows()) {
            throw Error(ErrorCode::unknown_node, "support DOF " + std::to_string(d) +
                                                     " outside matrix of size " +
                                                     std::to_string(k.rows()));
        }
        k.row(d).setZero();
        k.col(d).setZero();
        k(d, d) = 1.0;
    }
    return k;
}

Eigen::VectorXd solve_linear(const Eigen::MatrixXd& k_s, const Eigen::VectorXd& rhs) {
    if (k_s.rows() != k_s.cols() || k_s.rows() != rhs.size()) {
        throw Error(ErrorCode::invalid_input, "solve_linear: dimension mismatch");
    }
    if (!k_s.allFinite()) throw Error(ErrorCode::singular_matrix, "matrix has non-finite entries");

    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(k_s);
    const double scale = k_s.cwiseAbs().maxCoeff();
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    for (Eigen::Index i = 0; i < pivots.size(); ++i) {
        if (!(pivots[i] >= kSingularPivotRatio * scale)) {
            throw Error(ErrorCode::singular_matrix,
                        "pivot " + std::to_string(i) + " vanished; structure is unstable");
        }
    }
    return lu.solve(rhs);
}

}  // namespace corofin
