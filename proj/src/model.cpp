#include "corofin/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "corofin/errors.hpp"

namespace corofin {

bool Fixity::fixed(Component c) const {
    switch (c) {
        case Component::u: return u;
        case Component::w: return w;
        case Component::theta: return theta;
    }
    return false;
}

void SupportSet::fix(int node, Fixity fixity) {
    if (node < 0) throw Error(ErrorCode::unknown_node, "negative support node id");
    if (!fixity.any()) {
        constrained_.erase(node);
        return;
    }
    constrained_[node] = fixity;
}

bool SupportSet::is_fixed(int node, Component c) const {
    auto it = constrained_.find(node);
    return it != constrained_.end() && it->second.fixed(c);
}

bool SupportSet::is_dof_fixed(int dof) const {
    return is_fixed(dof / kDofsPerNode, static_cast<Component>(dof % kDofsPerNode));
}

bool SupportSet::has_translational_fixity() const {
    return std::any_of(constrained_.begin(), constrained_.end(),
                       [](const auto& kv) { return kv.second.u || kv.second.w; });
}

std::vector<int> SupportSet::constrained_dofs() const {
    std::vector<int> dofs;
    for (const auto& [node, fx] : constrained_) {
        for (Component c : {Component::u, Component::w, Component::theta}) {
            if (fx.fixed(c)) dofs.push_back(dof_of(node, c));
        }
    }
    return dofs;
}

int Structure::dof_index(int node, Component c) const {
    if (node < 0 || static_cast<std::size_t>(node) >= nodes_.size()) {
        throw Error(ErrorCode::unknown_node, "node " + std::to_string(node) + " not in model");
    }
    return dof_of(node, c);
}

std::array<int, 6> Structure::element_dofs(std::size_t element) const {
    const Element& e = elements_.at(element);
    return {dof_of(e.node_i, Component::u), dof_of(e.node_i, Component::w),
            dof_of(e.node_i, Component::theta), dof_of(e.node_j, Component::u),
            dof_of(e.node_j, Component::w), dof_of(e.node_j, Component::theta)};
}

Eigen::VectorXd Structure::reference_positions() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_dof());
    for (const Node& n : nodes_) {
        x[dof_of(n.id, Component::u)] = n.x0;
        x[dof_of(n.id, Component::w)] = n.y0;
    }
    return x;
}

namespace {

void check_props(const ElementProps& p, std::size_t index) {
    const bool ok = std::isfinite(p.e_modulus) && std::isfinite(p.area) &&
                    std::isfinite(p.inertia) && p.e_modulus > 0.0 && p.area > 0.0 &&
                    p.inertia > 0.0;
    if (!ok) {
        throw Error(ErrorCode::invalid_input,
                    "element " + std::to_string(index) + " needs E, A, I > 0", index);
    }
}

// Union-find over node ids.
struct Components {
    std::vector<int> parent;
    explicit Components(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void join(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Structure build_structure(std::vector<Node> nodes, const std::vector<ElementSpec>& element_specs,
                          SupportSet supports) {
    if (nodes.empty()) throw Error(ErrorCode::invalid_input, "structure has no nodes");

    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const Node& n = nodes[k];
        if (k > 0 && nodes[k - 1].id == n.id) {
            throw Error(ErrorCode::duplicate_node, "node id " + std::to_string(n.id) + " repeated");
        }
        if (!std::isfinite(n.x0) || !std::isfinite(n.y0)) {
            throw Error(ErrorCode::invalid_input,
                        "node " + std::to_string(n.id) + " has non-finite coordinates");
        }
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (nodes[k].id != static_cast<int>(k)) {
            throw Error(ErrorCode::invalid_input,
                        "node ids must be 0.." + std::to_string(nodes.size() - 1) +
                            " without gaps");
        }
    }
    const int n_nodes = static_cast<int>(nodes.size());
    auto known = [n_nodes](int id) { return id >= 0 && id < n_nodes; };

    Structure s;
    s.elements_.reserve(element_specs.size());
    Components graph(nodes.size());
    for (std::size_t k = 0; k < element_specs.size(); ++k) {
        const ElementSpec& spec = element_specs[k];
        if (!known(spec.node_i) || !known(spec.node_j)) {
            throw Error(ErrorCode::dangling_element,
                        "element " + std::to_string(k) + " references node " +
                            std::to_string(known(spec.node_i) ? spec.node_j : spec.node_i),
                        k);
        }
        if (spec.node_i == spec.node_j) {
            throw Error(ErrorCode::invalid_input,
                        "element " + std::to_string(k) + " connects a node to itself", k);
        }
        check_props(spec.props, k);

        const Node& a = nodes[spec.node_i];
        const Node& b = nodes[spec.node_j];
        const double dx = b.x0 - a.x0;
        const double dy = b.y0 - a.y0;
        const double l0 = std::hypot(dx, dy);
        if (!(l0 > 0.0)) {
            throw Error(ErrorCode::degenerate_element,
                        "element " + std::to_string(k) + " has coincident end nodes", k);
        }
        // atan2 returns [-pi, pi]; -pi is folded onto pi.
        double beta0 = std::atan2(dy, dx);
        if (beta0 == -M_PI) beta0 = M_PI;
        s.elements_.push_back(Element{spec.node_i, spec.node_j, spec.props, l0, beta0});
        graph.join(spec.node_i, spec.node_j);
    }

    const int root = graph.find(0);
    for (int id = 1; id < n_nodes; ++id) {
        if (graph.find(id) != root) {
            throw Error(ErrorCode::disconnected,
                        "node " + std::to_string(id) + " is not connected to node 0");
        }
    }

    for (const auto& [node, fx] : supports.constrained()) {
        if (!known(node)) {
            throw Error(ErrorCode::unknown_node,
                        "support on node " + std::to_string(node) + " not in model");
        }
    }
    if (!supports.has_translational_fixity()) {
        throw Error(ErrorCode::unconstrained_structure,
                    "no translational DOF is constrained; the structure is a mechanism");
    }

    s.nodes_ = std::move(nodes);
    s.supports_ = std::move(supports);
    s.constrained_mask_.assign(static_cast<std::size_t>(s.n_dof()), false);
    for (int d : s.supports_.constrained_dofs()) s.constrained_mask_[d] = true;
    return s;
}

void validate_load(const Structure& s, const LoadCase& load) {
    if (load.f_total.size() != s.n_dof()) {
        throw Error(ErrorCode::invalid_load, "load vector length " +
                                                 std::to_string(load.f_total.size()) +
                                                 " != n_dof " + std::to_string(s.n_dof()));
    }
    const auto& mask = s.constrained_mask();
    for (int d = 0; d < s.n_dof(); ++d) {
        if (!std::isfinite(load.f_total[d])) {
            throw Error(ErrorCode::invalid_load, "non-finite load at DOF " + std::to_string(d));
        }
        if (mask[d] && load.f_total[d] != 0.0) {
            throw Error(ErrorCode::invalid_load,
                        "load applied at constrained DOF " + std::to_string(d));
        }
    }
}

ElementProps rectangular_section(double e_modulus, double b, double h, ElementKind kind) {
    return ElementProps{e_modulus, b * h, b * h * h * h / 12.0, kind};
}

}  // namespace corofin
