#include "corofin/solver.hpp"

#include <cmath>
#include <optional>
#include <utility>
#include <string>

#include "corofin/errors.hpp"

namespace corofin {

void SolverConfig::validate() const {
    if (n_inc < 1) throw Error(ErrorCode::invalid_input, "n_inc must be >= 1");
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw Error(ErrorCode::invalid_input, "tolerance must be positive");
    }
    if (maxiter < 1) throw Error(ErrorCode::invalid_input, "maxiter must be >= 1");
}

const char* to_string(DivergenceCause cause) {
    switch (cause) {
        case DivergenceCause::none: return "none";
        case DivergenceCause::not_converged: return "not_converged";
        case DivergenceCause::singular_matrix: return "singular_matrix";
        case DivergenceCause::unstable_tangent: return "unstable_tangent";
        case DivergenceCause::degenerate_element: return "degenerate_element";
        case DivergenceCause::non_finite: return "non_finite";
    }
    return "unknown";
}

Eigen::VectorXd SolveResult::final_displacement(int n_dof) const {
    if (increments.empty()) return Eigen::VectorXd::Zero(n_dof);
    return increments.back().displacement;
}

double SolveResult::mean_iterations() const {
    if (increments.empty()) return 0.0;
    double total = 0.0;
    for (const auto& rec : increments) total += rec.iterations;
    return total / static_cast<double>(increments.size());
}

Residual residual(const Eigen::VectorXd& f_int, const Eigen::VectorXd& f_ext,
                  const SupportSet& supports) {
    if (f_int.size() != f_ext.size()) {
        throw Error(ErrorCode::invalid_input, "residual: vector length mismatch");
    }
    Residual r{f_int - f_ext, 0.0};
    for (int d : supports.constrained_dofs()) {
        if (d < r.vector.size()) r.vector[d] = 0.0;
    }
    r.norm = std::sqrt(r.vector.dot(r.vector));
    return r;
}

namespace {

Eigen::MatrixXd modified_tangent(const Structure& s, const ElementStateSet& states) {
    return apply_supports(assemble_tangent(s, states), s.supports());
}

DivergenceCause cause_of(const Error& err) {
    switch (err.code()) {
        case ErrorCode::singular_matrix: return DivergenceCause::singular_matrix;
        case ErrorCode::degenerate_element: return DivergenceCause::degenerate_element;
        default: throw err;
    }
}

// Halvings of a load step before a path that cannot be followed cleanly is
// declared unstable, and how close an unloading step must return to its
// starting state, relative to the step length.
constexpr int kMaxRefinement = 6;
constexpr double kReturnFraction = 0.25;

struct Attempt {
    Eigen::VectorXd u;
    ElementStateSet states;
    int iterations = 0;
    double residual_norm = 0.0;
    bool converged = false;
    // False once an iterate's tangent is not positive definite; that ends the
    // attempt.
    bool clean = true;
};

class Stepper {
public:
    Stepper(const Structure& s, const SolverConfig& config) : s_(s), config_(config) {}

    /// One load step from the equilibrium state (u0, states0) to f_target.
    Attempt newton(const Eigen::VectorXd& u0, const ElementStateSet& states0,
                   const Eigen::VectorXd& f_target, const Eigen::VectorXd& d_f) const {
        Attempt a;
        const Eigen::VectorXd du = step(states0, d_f, a.clean);

        Eigen::VectorXd delta_u = Eigen::VectorXd::Zero(u0.size());
        a.u = u0 + du;
        MemberData trial = update_member_data(s_, a.u);
        Residual r = residual(trial.f_int, f_target, s_.supports());

        while (a.clean && r.norm > config_.tolerance && a.iterations < config_.maxiter &&
               std::isfinite(r.norm)) {
            delta_u -= step(trial.states, r.vector, a.clean);
            a.u = u0 + du + delta_u;
            trial = update_member_data(s_, a.u);
            r = residual(trial.f_int, f_target, s_.supports());
            ++a.iterations;
        }

        a.states = std::move(trial.states);
        a.residual_norm = r.norm;
        a.converged = a.clean && r.norm <= config_.tolerance;
        return a;
    }

    /// Whether the converged step (u0 at f0) -> `to` stayed on one branch.
    /// Below a limit point the stable branch is single-valued in load, so
    /// stepping back to f0 from `to` must return to u0. A jump onto a
    /// disconnected branch unloads along that branch instead.
    bool reversible(const Eigen::VectorXd& u0, const Eigen::VectorXd& f0, const Attempt& to,
                    const Eigen::VectorXd& d_f) const {
        Attempt back;
        try {
            back = newton(to.u, to.states, f0, -d_f);
        } catch (const Error&) {
            return false;
        }
        return back.converged && (back.u - u0).norm() <= kReturnFraction * (to.u - u0).norm();
    }

    /// Re-traces the load step f_a -> f_b from (u_a, states_a) in two halves,
    /// refining any half that is not clean. Empty if the path cannot be
    /// followed, i.e. it runs through a limit or bifurcation point.
    std::optional<Attempt> retrace(const Eigen::VectorXd& u_a, const ElementStateSet& states_a,
                                   const Eigen::VectorXd& f_a, const Eigen::VectorXd& f_b,
                                   int depth) const {
        const Eigen::VectorXd f_m = f_a + 0.5 * (f_b - f_a);
        std::optional<Attempt> at;
        Eigen::VectorXd u = u_a;
        ElementStateSet states = states_a;
        for (const auto& [from, to] : {std::pair{&f_a, &f_m}, std::pair{&f_m, &f_b}}) {
            try {
                at = newton(u, states, *to, *to - *from);
            } catch (const Error&) {
                return std::nullopt;
            }
            if (!at->converged && at->clean) return std::nullopt;
            if (!at->clean || !reversible(u, *from, *at, *to - *from)) {
                if (depth >= kMaxRefinement) return std::nullopt;
                at = retrace(u, states, *from, *to, depth + 1);
                if (!at) return std::nullopt;
            }
            u = at->u;
            states = at->states;
        }
        return at;
    }

private:
    Eigen::VectorXd step(const ElementStateSet& states, const Eigen::VectorXd& rhs,
                         bool& clean) const {
        const Eigen::MatrixXd k_s = modified_tangent(s_, states);
        if (config_.stop_on_unstable_tangent) {
            const Eigen::LLT<Eigen::MatrixXd> llt(k_s);
            if (llt.info() == Eigen::Success) return llt.solve(rhs);
            clean = false;
        }
        return solve_linear(k_s, rhs);
    }

    const Structure& s_;
    const SolverConfig& config_;
};

}  // namespace

SolveResult solve(const Structure& s, const LoadCase& load, const SolverConfig& config) {
    config.validate();
    validate_load(s, load);

    const int n_dof = s.n_dof();
    const double ratio = 1.0 / static_cast<double>(config.n_inc);
    const Eigen::VectorXd d_f = ratio * load.f_total;
    const Stepper stepper(s, config);

    SolveResult result;
    result.increments.reserve(static_cast<std::size_t>(config.n_inc));
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n_dof);
    Eigen::VectorXd f_prev = Eigen::VectorXd::Zero(n_dof);
    ElementStateSet states = update_member_data(s, u).states;

    auto fail = [&](int n, DivergenceCause cause, std::optional<IncrementRecord> attempt) {
        result.status = SolveStatus::diverged;
        result.diverged_at = n;
        result.cause = cause;
        result.failed = std::move(attempt);
        return result;
    };

    for (int n = 1; n <= config.n_inc; ++n) {
        // F^n is formed from the total so that it equals (n / n_inc) F_total exactly.
        const Eigen::VectorXd f_next = (static_cast<double>(n) * ratio) * load.f_total;

        Attempt a;
        try {
            a = stepper.newton(u, states, f_next, d_f);
        } catch (const Error& err) {
            return fail(n, cause_of(err), std::nullopt);
        }

        IncrementRecord rec;
        rec.increment = n;
        rec.iterations = a.iterations;
        if (a.clean && !a.converged) {
            rec.displacement = std::move(a.u);
            rec.states = std::move(a.states);
            rec.residual_norm = a.residual_norm;
            const auto cause = std::isfinite(a.residual_norm) ? DivergenceCause::not_converged
                                                               : DivergenceCause::non_finite;
            return fail(n, cause, std::move(rec));
        }
        const bool suspect =
            config.stop_on_unstable_tangent && (!a.clean || !stepper.reversible(u, f_prev, a, d_f));
        if (suspect) {
            std::optional<Attempt> traced = stepper.retrace(u, states, f_prev, f_next, 1);
            if (!traced) {
                rec.displacement = std::move(a.u);
                rec.states = std::move(a.states);
                rec.residual_norm = a.residual_norm;
                return fail(n, DivergenceCause::unstable_tangent, std::move(rec));
            }
            a.u = std::move(traced->u);
            a.states = std::move(traced->states);
            a.residual_norm = traced->residual_norm;
        }

        rec.displacement = std::move(a.u);
        rec.states = std::move(a.states);
        rec.residual_norm = a.residual_norm;
        rec.converged = true;

        u = rec.displacement;
        states = rec.states;
        f_prev = f_next;
        result.increments.push_back(std::move(rec));
    }
    return result;
}

double probe_max_force(const Structure& s, const LoadCase& load_pattern,
                       const SolverConfig& config, double f_lo, double f_hi, double resolution) {
    if (!(resolution > 0.0) || !(f_lo >= 0.0) || !(f_hi > f_lo)) {
        throw Error(ErrorCode::bracket_invalid, "need 0 <= f_lo < f_hi and resolution > 0");
    }
    auto holds = [&](double f) { return solve(s, load_pattern.scaled(f), config).completed(); };

    if (!holds(f_lo)) {
        throw Error(ErrorCode::bracket_invalid,
                    "solve does not complete at the lower bracket " + std::to_string(f_lo));
    }
    if (holds(f_hi)) {
        throw Error(ErrorCode::bracket_invalid,
                    "solve still completes at the upper bracket " + std::to_string(f_hi));
    }
    double lo = f_lo;
    double hi = f_hi;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace corofin
