#include "corofin/finray.hpp"

#include <cmath>
#include <string>

#include "corofin/errors.hpp"

namespace corofin {

namespace {

constexpr double kDeg = M_PI / 180.0;

struct Outline {
    Eigen::Vector2d front_base;
    Eigen::Vector2d back_base;
    Eigen::Vector2d tip;
};

// Back fin vertical, tip straight above the back-fin root; the front fin
// leans in at the top angle. Height is held, so the base width follows from
// the angle.
Outline outline_of(const FinRayParams& p) {
    const double base = p.height * std::tan(p.top_angle * kDeg);
    return {{0.0, 0.0}, {base, 0.0}, {base, p.height}};
}

class MeshBuilder {
public:
    int add_node(const Eigen::Vector2d& x) {
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{id, x.x(), x.y()});
        return id;
    }

    Eigen::Vector2d position(int id) const { return {nodes_[id].x0, nodes_[id].y0}; }

    /// Splits a straight segment into `parts` elements; returns element indices.
    std::vector<std::size_t> add_segment(int a, int b, int parts, const ElementProps& props) {
        std::vector<std::size_t> out;
        const Eigen::Vector2d xa = position(a);
        const Eigen::Vector2d xb = position(b);
        int prev = a;
        for (int k = 1; k <= parts; ++k) {
            const int next = (k == parts) ? b : add_node(xa + (xb - xa) * (double(k) / parts));
            out.push_back(specs_.size());
            specs_.push_back(ElementSpec{prev, next, props});
            prev = next;
        }
        return out;
    }

    std::vector<Node> nodes_;
    std::vector<ElementSpec> specs_;
};

// Solves a + s*da = b + t*db for (s, t).
std::optional<Eigen::Vector2d> intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& da,
                                         const Eigen::Vector2d& b, const Eigen::Vector2d& db) {
    Eigen::Matrix2d m;
    m.col(0) = da;
    m.col(1) = -db;
    if (std::abs(m.determinant()) < 1e-14) return std::nullopt;
    return m.partialPivLu().solve(b - a);
}

}  // namespace

void FinRayParams::validate() const {
    auto bad = [](const std::string& what) { throw Error(ErrorCode::invalid_input, what); };
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(width) || !positive(height)) bad("width and height must be positive");
    if (!positive(section_b) || !positive(section_h)) bad("section dimensions must be positive");
    if (!positive(e_modulus)) bad("e_modulus must be positive");
    if (n_crossbeams < 0) bad("n_crossbeams must be >= 0");
    if (!(top_angle > 0.0 && top_angle < 90.0)) bad("top_angle must lie in (0, 90) degrees");
    if (!(std::abs(inclination) < 45.0)) bad("|inclination| must be below 45 degrees");
    if (refinement < 1) bad("refinement must be >= 1");
}

FinRayModel generate(const FinRayParams& p) {
    p.validate();
    const Outline o = outline_of(p);
    const ElementProps fin = rectangular_section(p.e_modulus, p.section_b, p.section_h);
    ElementProps bar = fin;
    if (p.connection == Connection::simple) bar.kind = ElementKind::pin_ended;

    const Eigen::Vector2d front_dir = o.tip - o.front_base;
    const Eigen::Vector2d back_unit = (o.tip - o.back_base).normalized();
    // Perpendicular to the back fin, pointing across the finger.
    Eigen::Vector2d across(-back_unit.y(), back_unit.x());
    if (across.dot(o.front_base - o.back_base) < 0.0) across = -across;
    const double inc = p.inclination * kDeg;
    const Eigen::Vector2d bar_dir = std::cos(inc) * across - std::sin(inc) * back_unit;

    // Front-fin parameter of each crossbeam junction.
    std::vector<double> front_t;
    std::vector<Eigen::Vector2d> back_points;
    for (int i = 1; i <= p.n_crossbeams; ++i) {
        const double frac = double(i) / (p.n_crossbeams + 1);
        const Eigen::Vector2d b = o.back_base + frac * (o.tip - o.back_base);
        const auto st = intersect(b, bar_dir, o.front_base, front_dir);
        const double prev = front_t.empty() ? 0.0 : front_t.back();
        if (!st || (*st)[0] <= 0.0 || (*st)[1] <= prev + 1e-9 || (*st)[1] >= 1.0 - 1e-9) {
            throw Error(ErrorCode::geometry_infeasible,
                        "crossbeam " + std::to_string(i) + " does not meet the front fin "
                        "between its base and tip");
        }
        front_t.push_back((*st)[1]);
        back_points.push_back(b);
    }

    MeshBuilder mesh;
    FinRayModel model{Structure{}, {}, {}, {}, {}, {}};
    const int front_base = mesh.add_node(o.front_base);
    const int back_base = mesh.add_node(o.back_base);
    const int tip = mesh.add_node(o.tip);

    std::vector<int> front_junctions;
    for (double t : front_t) front_junctions.push_back(mesh.add_node(o.front_base + t * front_dir));
    std::vector<int> back_junctions;
    for (const auto& b : back_points) back_junctions.push_back(mesh.add_node(b));

    const double last_t = front_t.empty() ? 0.0 : front_t.back();
    const int tip_adjacent = mesh.add_node(o.front_base + 0.5 * (last_t + 1.0) * front_dir);

    auto append = [](std::vector<std::size_t>& dst, const std::vector<std::size_t>& src) {
        dst.insert(dst.end(), src.begin(), src.end());
    };

    int prev = front_base;
    for (int j : front_junctions) {
        append(model.front_fin_elements, mesh.add_segment(prev, j, p.refinement, fin));
        prev = j;
    }
    append(model.front_fin_elements, mesh.add_segment(prev, tip_adjacent, p.refinement, fin));
    append(model.front_fin_elements, mesh.add_segment(tip_adjacent, tip, p.refinement, fin));

    prev = back_base;
    for (int j : back_junctions) {
        append(model.back_fin_elements, mesh.add_segment(prev, j, p.refinement, fin));
        prev = j;
    }
    append(model.back_fin_elements, mesh.add_segment(prev, tip, p.refinement, fin));

    // A moment-free crossbeam is exactly one two-force member; subdividing
    // it would leave its interior nodes without transverse stiffness.
    const int bar_parts = (p.connection == Connection::simple) ? 1 : p.refinement;
    for (std::size_t i = 0; i < back_junctions.size(); ++i) {
        append(model.crossbeam_elements,
               mesh.add_segment(back_junctions[i], front_junctions[i], bar_parts, bar));
    }

    SupportSet supports;
    supports.fix_all(front_base);
    supports.fix_all(back_base);
    model.structure = build_structure(std::move(mesh.nodes_), mesh.specs_, std::move(supports));

    model.contact_nodes = front_junctions;
    model.contact_nodes.push_back(tip_adjacent);

    const Eigen::Vector2d fu = front_dir.normalized();
    model.inward_normal = Eigen::Vector2d(-fu.y(), fu.x());
    if (model.inward_normal.dot(o.back_base - o.front_base) < 0.0) {
        model.inward_normal = -model.inward_normal;
    }
    return model;
}

LoadCase load_at_contact_node(const FinRayModel& model, int rank, double magnitude,
                              std::optional<Eigen::Vector2d> direction) {
    if (rank < 1 || rank > static_cast<int>(model.contact_nodes.size())) {
        throw Error(ErrorCode::unknown_contact_node,
                    "contact node rank " + std::to_string(rank) + " outside 1.." +
                        std::to_string(model.contact_nodes.size()));
    }
    if (!std::isfinite(magnitude)) throw Error(ErrorCode::invalid_load, "non-finite magnitude");
    Eigen::Vector2d dir = direction.value_or(model.inward_normal);
    if (!(dir.norm() > 0.0)) throw Error(ErrorCode::invalid_load, "zero load direction");
    dir.normalize();

    LoadCase load = LoadCase::zero(model.structure);
    const int node = model.contact_nodes[rank - 1];
    load.f_total[dof_of(node, Component::u)] = magnitude * dir.x();
    load.f_total[dof_of(node, Component::w)] = magnitude * dir.y();
    return load;
}

}  // namespace corofin
