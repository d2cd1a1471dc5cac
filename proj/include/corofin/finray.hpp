#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "corofin/model.hpp"

namespace corofin {

enum class Connection {
    simple,  ///< crossbeam ends rotate freely about the fin
    rigid,   ///< crossbeam ends are welded to the fin
};

/// Design parameters of a single Fin-Ray finger. Defaults are the reference
/// finger: 40 x 72 mm outline, 20 x 1 mm section, E = 20 MPa.
///
/// The outline has a vertical back fin of length `height` and a front fin
/// leaning in at `top_angle`, so the generated base span is
/// height * tan(top_angle). Height and angle fix the triangle; `width` is
/// the nominal span of the reference outline and is validated but does not
/// enter the geometry.
///
///          tip
///          /|
///   front / |  back
///    fin /  |  fin        crossbeams run from the back fin toward the
///       /   |             front fin, perpendicular to the back fin;
///      /____|             positive inclination lowers the front end
///    base  base
struct FinRayParams {
    double width = 40e-3;   // m, nominal base span (see above)
    double height = 72e-3;  // m, base-to-tip height
    int n_crossbeams = 3;
    double top_angle = 20.0;    // deg, angle between the fins at the tip
    double inclination = 0.0;   // deg, crossbeam tilt; + lowers the front end
    Connection connection = Connection::rigid;
    double section_b = 20e-3;  // m, out-of-plane section depth
    double section_h = 1e-3;   // m, in-plane section thickness
    double e_modulus = 2e7;    // Pa
    int refinement = 4;        // elements per physical segment

    /// Throws Error(invalid_input) on out-of-range values.
    void validate() const;
};

struct FinRayModel {
    Structure structure;
    /// Front-fin load nodes, rank 1 first (nearest the base). One per
    /// crossbeam junction plus the midpoint of the segment below the tip.
    std::vector<int> contact_nodes;
    std::vector<std::size_t> crossbeam_elements;
    std::vector<std::size_t> front_fin_elements;
    std::vector<std::size_t> back_fin_elements;
    /// Unit normal of the undeformed front fin pointing into the finger.
    Eigen::Vector2d inward_normal;
};

/// Builds the meshed finger. Both fin roots are fully clamped. Throws
/// Error(geometry_infeasible) when a crossbeam cannot reach the front fin
/// strictly between its base and tip.
FinRayModel generate(const FinRayParams& params);

/// Single concentrated force of `magnitude` N at contact node `rank`
/// (1-based). Direction defaults to the inward front-fin normal; a supplied
/// direction is normalized. Throws Error(unknown_contact_node) for a bad rank.
LoadCase load_at_contact_node(const FinRayModel& model, int rank, double magnitude,
                              std::optional<Eigen::Vector2d> direction = std::nullopt);

}  // namespace corofin
