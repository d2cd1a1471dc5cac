#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace corofin {

/// Nodal degree of freedom. Each node carries (u, w, theta): translation
/// along global X, translation along global Y, in-plane rotation.
enum class Component : int { u = 0, w = 1, theta = 2 };

inline constexpr int kDofsPerNode = 3;

enum class ElementKind {
    beam,       ///< axial + bending, moments transmitted at both ends
    pin_ended,  ///< moment-free at both ends; carries axial force only
};

struct Node {
    int id = 0;
    double x0 = 0.0;  // m
    double y0 = 0.0;  // m
};

struct ElementProps {
    double e_modulus = 0.0;  // Pa
    double area = 0.0;       // m^2
    double inertia = 0.0;    // m^4
    ElementKind kind = ElementKind::beam;
};

/// Element as requested by the caller; reference length and angle are
/// derived by build_structure.
struct ElementSpec {
    int node_i = 0;
    int node_j = 0;
    ElementProps props;
};

struct Element {
    int node_i = 0;
    int node_j = 0;
    ElementProps props;
    double l0 = 0.0;     // reference length, m
    double beta0 = 0.0;  // reference angle from global X, (-pi, pi]
};

struct Fixity {
    bool u = false;
    bool w = false;
    bool theta = false;

    bool any() const { return u || w || theta; }
    bool fixed(Component c) const;
};

class SupportSet {
public:
    SupportSet() = default;

    /// Replaces any previous fixity of the node.
    void fix(int node, Fixity fixity);
    void fix_all(int node) { fix(node, Fixity{true, true, true}); }

    bool is_fixed(int node, Component c) const;
    bool is_dof_fixed(int dof) const;
    bool empty() const { return constrained_.empty(); }
    bool has_translational_fixity() const;

    /// Sorted global DOF indices that are held at zero.
    std::vector<int> constrained_dofs() const;

    const std::map<int, Fixity>& constrained() const { return constrained_; }

private:
    std::map<int, Fixity> constrained_;
};

/// 0-based global DOF index: 3 * node + component.
constexpr int dof_of(int node, Component c) { return kDofsPerNode * node + static_cast<int>(c); }

/// Immutable, validated structural model. Only build_structure creates one.
class Structure {
public:
    /// Empty structure with no nodes; only useful as a placeholder.
    Structure() = default;

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Element>& elements() const { return elements_; }
    const SupportSet& supports() const { return supports_; }

    std::size_t n_nodes() const { return nodes_.size(); }
    std::size_t n_elements() const { return elements_.size(); }
    int n_dof() const { return kDofsPerNode * static_cast<int>(nodes_.size()); }

    /// Throws Error(unknown_node) for node ids outside the model.
    int dof_index(int node, Component c) const;

    /// Global DOF indices (u1, w1, theta1, u2, w2, theta2) of an element.
    std::array<int, 6> element_dofs(std::size_t element) const;

    /// Per-DOF flag, true where the support holds the DOF at zero.
    const std::vector<bool>& constrained_mask() const { return constrained_mask_; }

    /// Reference coordinates as an n_dof vector (theta entries zero).
    Eigen::VectorXd reference_positions() const;

    friend Structure build_structure(std::vector<Node> nodes,
                                     const std::vector<ElementSpec>& element_specs,
                                     SupportSet supports);

private:
    std::vector<Node> nodes_;
    std::vector<Element> elements_;
    SupportSet supports_;
    std::vector<bool> constrained_mask_;
};

/// Validates and builds a Structure. Node ids must be exactly 0..n-1 (any
/// order; the result is sorted by id). Computes l0 and beta0 for every
/// element from the reference coordinates.
Structure build_structure(std::vector<Node> nodes, const std::vector<ElementSpec>& element_specs,
                          SupportSet supports);

/// Total external nodal forces; N at translational entries, N*m at rotations.
struct LoadCase {
    Eigen::VectorXd f_total;

    static LoadCase zero(const Structure& s) { return {Eigen::VectorXd::Zero(s.n_dof())}; }
    LoadCase scaled(double factor) const { return {f_total * factor}; }
};

/// Throws Error(invalid_load) on size mismatch, non-finite entries, or a
/// nonzero entry at a constrained DOF.
void validate_load(const Structure& s, const LoadCase& load);

/// Rectangular b x h section: A = b*h, I = b*h^3/12.
ElementProps rectangular_section(double e_modulus, double b, double h,
                                 ElementKind kind = ElementKind::beam);

}  // namespace corofin
