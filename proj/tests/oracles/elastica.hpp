#pragma once

// Inextensible elastica for a clamped cantilever under a tip force of fixed
// direction perpendicular to the undeformed axis. Independent of the
// finite-element code: RK4 on theta'' = -(F/EI) cos(theta) with theta(0) = 0,
// shooting on the clamped-end curvature until the free end is moment-free
// (theta'(L) = 0).

#include <cmath>

namespace oracle {

struct ElasticaTip {
    double x;  // tip position along the undeformed axis
    double y;  // tip position transverse to it (direction of the load)
};

namespace detail {

struct State {
    double theta, kappa, x, y;
};

inline State rhs(const State& s, double load) {
    return {s.kappa, -load * std::cos(s.theta), std::cos(s.theta), std::sin(s.theta)};
}

inline State axpy(const State& s, double h, const State& d) {
    return {s.theta + h * d.theta, s.kappa + h * d.kappa, s.x + h * d.x, s.y + h * d.y};
}

// Integrates from the clamp with root curvature kappa0; load = F/EI.
inline State integrate(double kappa0, double load, double length, int steps) {
    State s{0.0, kappa0, 0.0, 0.0};
    const double h = length / steps;
    for (int i = 0; i < steps; ++i) {
        const State k1 = rhs(s, load);
        const State k2 = rhs(axpy(s, 0.5 * h, k1), load);
        const State k3 = rhs(axpy(s, 0.5 * h, k2), load);
        const State k4 = rhs(axpy(s, h, k3), load);
        s.theta += h / 6.0 * (k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta);
        s.kappa += h / 6.0 * (k1.kappa + 2 * k2.kappa + 2 * k3.kappa + k4.kappa);
        s.x += h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
        s.y += h / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    }
    return s;
}

}  // namespace detail

/// Tip position of a cantilever of given length and bending stiffness under
/// tip force `force` (same units throughout).
inline ElasticaTip cantilever_tip(double length, double ei, double force, int steps = 4000) {
    const double load = force / ei;
    // theta'(L) is increasing in kappa0: negative at 0, non-negative at F L / EI.
    double lo = 0.0;
    double hi = load * length;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (detail::integrate(mid, load, length, steps).kappa < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const detail::State end = detail::integrate(0.5 * (lo + hi), load, length, steps);
    return {end.x, end.y};
}

}  // namespace oracle
