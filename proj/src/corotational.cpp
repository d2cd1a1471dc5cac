#include "corofin/corotational.hpp"

#include <cmath>

#include "corofin/errors.hpp"

namespace corofin {

namespace {

// Unit vector along the chord, r = d(L)/dp.
Vec6 axial_direction(const ElementGeometry& g) {
    Vec6 r;
    r << -g.cos_beta, -g.sin_beta, 0.0, g.cos_beta, g.sin_beta, 0.0;
    return r;
}

// Chord normal, z/L = d(beta)/dp up to sign.
Vec6 normal_direction(const ElementGeometry& g) {
    Vec6 z;
    z << g.sin_beta, -g.cos_beta, 0.0, -g.sin_beta, g.cos_beta, 0.0;
    return z;
}

}  // namespace

double ElementGeometry::angle() const { return wrap_angle(std::atan2(sin_beta, cos_beta)); }

double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * M_PI);  // [-pi, pi]
    if (r <= -M_PI) r += 2.0 * M_PI;
    return r;
}

ElementGeometry current_geometry(const Element& e, const Vec6& p) {
    const double dx = e.l0 * std::cos(e.beta0) + (p[3] - p[0]);
    const double dy = e.l0 * std::sin(e.beta0) + (p[4] - p[1]);
    const double length = std::hypot(dx, dy);
    if (!(length > 1e-14 * e.l0)) {
        throw Error(ErrorCode::degenerate_element, "element ends coincide");
    }
    return ElementGeometry{length, dx / length, dy / length};
}

LocalDisplacements local_displacements(const Element& e, const Vec6& p,
                                       const ElementGeometry& g) {
    const double chord_rotation = wrap_angle(g.angle() - e.beta0);
    return LocalDisplacements{g.length - e.l0, wrap_angle(p[2] - chord_rotation),
                              wrap_angle(p[5] - chord_rotation)};
}

LocalForces local_forces(const ElementProps& props, double l0, const LocalDisplacements& d) {
    LocalForces q;
    q.n_axial = props.e_modulus * props.area * d.u_l / l0;
    if (props.kind == ElementKind::beam) {
        const double k = 2.0 * props.e_modulus * props.inertia / l0;
        q.m1 = k * (2.0 * d.theta_1l + d.theta_2l);
        q.m2 = k * (d.theta_1l + 2.0 * d.theta_2l);
    }
    return q;
}

Mat36 transformation_matrix(const ElementGeometry& g) {
    const double c = g.cos_beta;
    const double s = g.sin_beta;
    const double cl = c / g.length;
    const double sl = s / g.length;
    Mat36 b;
    b << -c, -s, 0.0, c, s, 0.0,
         -sl, cl, 1.0, sl, -cl, 0.0,
         -sl, cl, 0.0, sl, -cl, 1.0;
    return b;
}

Vec6 global_internal_force(const Mat36& b, const LocalForces& q) {
    return b.transpose() * q.as_vector();
}

Mat6 element_tangent_stiffness(const ElementProps& props, double l0, const ElementGeometry& g,
                               const LocalForces& q) {
    const Mat36 b = transformation_matrix(g);
    const double ea = props.e_modulus * props.area / l0;
    Eigen::Matrix3d cl = Eigen::Matrix3d::Zero();
    cl(0, 0) = ea;
    if (props.kind == ElementKind::beam) {
        const double ei = props.e_modulus * props.inertia / l0;
        cl(1, 1) = cl(2, 2) = 4.0 * ei;
        cl(1, 2) = cl(2, 1) = 2.0 * ei;
    }
    const Vec6 r = axial_direction(g);
    const Vec6 z = normal_direction(g);
    const double len = g.length;

    Mat6 k = b.transpose() * cl * b;
    k.noalias() += (q.n_axial / len) * (z * z.transpose());
    k.noalias() += ((q.m1 + q.m2) / (len * len)) * (r * z.transpose() + z * r.transpose());
    return k;
}

Vec6 element_internal_force(const Element& e, const Vec6& p) {
    const ElementGeometry g = current_geometry(e, p);
    const LocalForces q = local_forces(e.props, e.l0, local_displacements(e, p, g));
    return global_internal_force(transformation_matrix(g), q);
}

}  // namespace corofin
