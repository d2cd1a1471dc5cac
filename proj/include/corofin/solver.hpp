#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "corofin/assembly.hpp"
#include "corofin/model.hpp"

namespace corofin {

struct SolverConfig {
    int n_inc = 10;
    double tolerance = 1e-3;  // N, on the free-DOF residual norm
    int maxiter = 100;
    /// Detect collapse instead of letting Newton jump to a distant branch.
    /// An increment whose iterates meet a tangent that is not positive
    /// definite, or whose converged state does not unload back to the
    /// previous one, is re-traced in halved load steps; if the path still
    /// cannot be followed the solve ends with cause unstable_tangent.
    bool stop_on_unstable_tangent = true;

    /// Throws Error(invalid_input) unless n_inc >= 1, tolerance > 0, maxiter >= 1.
    void validate() const;
};

/// Converged (or, for SolveResult::failed, last attempted) state of one
/// load increment.
struct IncrementRecord {
    int increment = 0;  // 1-based
    Eigen::VectorXd displacement;
    ElementStateSet states;
    int iterations = 0;  // corrector iterations
    double residual_norm = 0.0;
    bool converged = false;
};

enum class SolveStatus { completed, diverged };

enum class DivergenceCause {
    none,
    not_converged,       // residual above tolerance after maxiter corrections
    singular_matrix,     // K_s lost a pivot (mechanism)
    unstable_tangent,    // path ran into a limit or bifurcation point (collapse)
    degenerate_element,  // an element collapsed to zero length
    non_finite,          // residual became NaN or infinite
};

const char* to_string(DivergenceCause cause);

struct SolveResult {
    std::vector<IncrementRecord> increments;  // converged increments, in order
    SolveStatus status = SolveStatus::completed;
    int diverged_at = 0;  // 1-based increment index when diverged, else 0
    DivergenceCause cause = DivergenceCause::none;
    /// The attempted increment that failed, when it got far enough to have a state.
    std::optional<IncrementRecord> failed;

    bool completed() const { return status == SolveStatus::completed; }
    /// Displacement after the last converged increment (zero if none).
    Eigen::VectorXd final_displacement(int n_dof) const;
    /// Mean corrector iterations per converged increment.
    double mean_iterations() const;
};

struct Residual {
    Eigen::VectorXd vector;  // F_int - F_ext, zero at constrained DOFs
    double norm = 0.0;
};

/// Out-of-balance force over the free DOFs; support reactions are excluded.
Residual residual(const Eigen::VectorXd& f_int, const Eigen::VectorXd& f_ext,
                  const SupportSet& supports);

/// Incremental-iterative full Newton-Raphson under load control.
///
/// The total load is applied in n_inc equal steps dF = F_total / n_inc. Each
/// step starts with a tangent predictor du = K_s^-1 dF from the last
/// converged state; the corrector then accumulates
///     delta_u <- delta_u - K_s^-1 R,   u = u_n + du + delta_u
/// reassembling K_s from the current state each iteration until the
/// residual norm is within tolerance. Failure to converge, a singular K_s,
/// a collapsed element or (see SolverConfig) an unstable path ends the solve
/// with status diverged; the history up to the last converged increment is
/// kept, and the attempted increment is in `failed` when it produced a state.
SolveResult solve(const Structure& s, const LoadCase& load, const SolverConfig& config);

/// Largest scale factor f in [f_lo, f_hi] (to within `resolution`) for which
/// solve(s, f * load_pattern) completes. Bisection; requires that the solve
/// completes at f_lo and fails at f_hi, otherwise Error(bracket_invalid).
/// With a unit-magnitude pattern the result is the maximum allowable force
/// in Newtons.
double probe_max_force(const Structure& s, const LoadCase& load_pattern,
                       const SolverConfig& config, double f_lo, double f_hi, double resolution);

}  // namespace corofin
