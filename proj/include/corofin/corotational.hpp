#pragma once

#include <Eigen/Dense>

#include "corofin/model.hpp"

namespace corofin {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat36 = Eigen::Matrix<double, 3, 6>;

/// Current chord of an element: length and direction cosines.
struct ElementGeometry {
    double length = 0.0;
    double cos_beta = 1.0;
    double sin_beta = 0.0;

    /// Chord angle beta in (-pi, pi].
    double angle() const;
};

/// Deformation measured in the co-rotated frame.
struct LocalDisplacements {
    double u_l = 0.0;       // chord elongation L - L0
    double theta_1l = 0.0;  // end rotations relative to the chord
    double theta_2l = 0.0;
};

struct LocalForces {
    double n_axial = 0.0;  // N, tension positive
    double m1 = 0.0;       // N*m
    double m2 = 0.0;

    Eigen::Vector3d as_vector() const { return {n_axial, m1, m2}; }
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

/// Chord length and direction after displacing the element ends by
/// p = (u1, w1, theta1, u2, w2, theta2). Throws degenerate_element when the
/// ends coincide (L <= 1e-14 * L0).
ElementGeometry current_geometry(const Element& e, const Vec6& p);

/// u_l = L - L0, theta_il = theta_i + beta0 - beta, rotations wrapped.
LocalDisplacements local_displacements(const Element& e, const Vec6& p,
                                       const ElementGeometry& g);

/// N = EA u_l / L0; moments from the Euler-Bernoulli end-rotation relation
/// on the reference length. Pin-ended elements carry no moment.
LocalForces local_forces(const ElementProps& props, double l0, const LocalDisplacements& d);

/// B with delta p_l = B delta p, evaluated on the current chord.
Mat36 transformation_matrix(const ElementGeometry& g);

/// q = B^T q_l.
Vec6 global_internal_force(const Mat36& b, const LocalForces& q);

/// Consistent tangent dq/dp:
///   k = B^T C_l B + (N/L) z z^T + ((M1 + M2)/L^2) (r z^T + z r^T)
/// The middle term is a product; the textbook prints it with a stray slash.
Mat6 element_tangent_stiffness(const ElementProps& props, double l0, const ElementGeometry& g,
                               const LocalForces& q);

/// Convenience: global internal force of one element for displacement p.
Vec6 element_internal_force(const Element& e, const Vec6& p);

}  // namespace corofin
