#include <cmath>
#include <set>

#include "corofin/errors.hpp"
#include "corofin/model.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace corofin;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected corofin::Error");
    return ErrorCode::invalid_input;
}

SupportSet clamp(int node) {
    SupportSet s;
    s.fix_all(node);
    return s;
}

}  // namespace

TEST_CASE("horizontal unit beam gets l0 = 1 and beta0 = 0") {
    const auto props = testing_support::table_section();
    const Structure s = build_structure({{0, 0, 0}, {1, 1, 0}}, {{0, 1, props}}, clamp(0));
    REQUIRE(s.n_elements() == 1);
    CHECK(s.elements()[0].l0 == 1.0);
    CHECK(s.elements()[0].beta0 == 0.0);
    CHECK(s.n_dof() == 6);
}

TEST_CASE("3-4-5 element") {
    const auto props = testing_support::table_section();
    const Structure s = build_structure({{0, 0, 0}, {1, 3, 4}}, {{0, 1, props}}, clamp(0));
    CHECK(s.elements()[0].l0 == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(s.elements()[0].beta0 == doctest::Approx(std::atan2(4.0, 3.0)).epsilon(1e-15));
}

TEST_CASE("an element pointing along -X has beta0 = +pi") {
    const auto props = testing_support::table_section();
    const Structure s = build_structure({{0, 1, 0}, {1, 0, 0}}, {{0, 1, props}}, clamp(0));
    CHECK(s.elements()[0].beta0 == M_PI);
}

TEST_CASE("validation errors") {
    const auto props = testing_support::table_section();
    CHECK(code_of([&] { build_structure({{0, 0, 0}, {1, 1, 0}}, {{0, 7, props}}, clamp(0)); }) ==
          ErrorCode::dangling_element);
    CHECK(code_of([&] { build_structure({{0, 0, 0}, {0, 1, 0}}, {{0, 1, props}}, clamp(0)); }) ==
          ErrorCode::duplicate_node);
    CHECK(code_of([&] {
              build_structure({{0, 0, 0}, {1, 1, 0}, {2, 2, 0}, {3, 3, 0}},
                              {{0, 1, props}, {2, 3, props}}, clamp(0));
          }) == ErrorCode::disconnected);
    CHECK(code_of([&] { build_structure({{0, 0, 0}, {1, 1, 0}}, {{0, 1, props}}, {}); }) ==
          ErrorCode::unconstrained_structure);

    SupportSet rotation_only;
    rotation_only.fix(0, {false, false, true});
    CHECK(code_of([&] {
              build_structure({{0, 0, 0}, {1, 1, 0}}, {{0, 1, props}}, rotation_only);
          }) == ErrorCode::unconstrained_structure);

    CHECK(code_of([&] { build_structure({{0, 0, 0}, {1, 1, 0}}, {{0, 1, props}}, clamp(5)); }) ==
          ErrorCode::unknown_node);
    CHECK(code_of([&] { build_structure({{0, 0, 0}, {1, 0, 0}}, {{0, 1, props}}, clamp(0)); }) ==
          ErrorCode::degenerate_element);
    CHECK(code_of([&] { build_structure({{0, 0, 0}, {1, 1, 0}}, {{1, 1, props}}, clamp(0)); }) ==
          ErrorCode::invalid_input);

    ElementProps bad = props;
    bad.inertia = 0.0;
    CHECK(code_of([&] { build_structure({{0, 0, 0}, {1, 1, 0}}, {{0, 1, bad}}, clamp(0)); }) ==
          ErrorCode::invalid_input);
    CHECK(code_of([&] {
              build_structure({{0, 0, 0}, {1, NAN, 0}}, {{0, 1, props}}, clamp(0));
          }) == ErrorCode::invalid_input);
    CHECK(code_of([&] { build_structure({{0, 0, 0}, {2, 1, 0}}, {{0, 2, props}}, clamp(0)); }) ==
          ErrorCode::invalid_input);
}

TEST_CASE("node order in the input does not matter") {
    const auto props = testing_support::table_section();
    const Structure s =
        build_structure({{1, 2.0, 0.0}, {0, 0.0, 0.0}}, {{0, 1, props}}, clamp(0));
    CHECK(s.nodes()[0].id == 0);
    CHECK(s.nodes()[1].x0 == 2.0);
}

TEST_CASE("dof_index examples and bijection") {
    const auto s = testing_support::cantilever(4, 1.0, testing_support::table_section());
    CHECK(s.dof_index(0, Component::u) == 0);
    CHECK(s.dof_index(2, Component::theta) == 8);
    CHECK(s.dof_index(1, Component::w) == 4);
    CHECK(code_of([&] { (void)s.dof_index(5, Component::u); }) == ErrorCode::unknown_node);
    CHECK(code_of([&] { (void)s.dof_index(-1, Component::u); }) == ErrorCode::unknown_node);

    std::set<int> seen;
    for (std::size_t n = 0; n < s.n_nodes(); ++n) {
        for (Component c : {Component::u, Component::w, Component::theta}) {
            const int d = s.dof_index(static_cast<int>(n), c);
            CHECK(d >= 0);
            CHECK(d < s.n_dof());
            seen.insert(d);
        }
    }
    CHECK(seen.size() == static_cast<std::size_t>(s.n_dof()));
}

TEST_CASE("stored l0 matches node coordinates and builds are deterministic") {
    const auto props = testing_support::table_section();
    const Structure a = testing_support::small_frame(props);
    const Structure b = testing_support::small_frame(props);
    for (std::size_t e = 0; e < a.n_elements(); ++e) {
        const Element& el = a.elements()[e];
        const Node& ni = a.nodes()[el.node_i];
        const Node& nj = a.nodes()[el.node_j];
        const double l = std::hypot(nj.x0 - ni.x0, nj.y0 - ni.y0);
        CHECK(std::abs(el.l0 - l) <= 1e-12 * l);
        CHECK(el.l0 == b.elements()[e].l0);
        CHECK(el.beta0 == b.elements()[e].beta0);
        CHECK(el.beta0 > -M_PI);
        CHECK(el.beta0 <= M_PI);
    }
}

TEST_CASE("support set bookkeeping") {
    SupportSet s;
    s.fix(2, {true, false, true});
    s.fix_all(0);
    CHECK(s.constrained_dofs() == std::vector<int>{0, 1, 2, 6, 8});
    CHECK(s.is_dof_fixed(6));
    CHECK_FALSE(s.is_dof_fixed(7));
    s.fix(2, {});
    CHECK(s.constrained_dofs() == std::vector<int>{0, 1, 2});
}

TEST_CASE("load validation") {
    const auto s = testing_support::cantilever(2, 1.0, testing_support::table_section());
    LoadCase ok = LoadCase::zero(s);
    ok.f_total[4] = 1.0;
    CHECK_NOTHROW(validate_load(s, ok));

    LoadCase at_support = LoadCase::zero(s);
    at_support.f_total[1] = 1.0;
    CHECK(code_of([&] { validate_load(s, at_support); }) == ErrorCode::invalid_load);

    LoadCase wrong_size{Eigen::VectorXd::Zero(4)};
    CHECK(code_of([&] { validate_load(s, wrong_size); }) == ErrorCode::invalid_load);

    LoadCase nan_load = LoadCase::zero(s);
    nan_load.f_total[5] = NAN;
    CHECK(code_of([&] { validate_load(s, nan_load); }) == ErrorCode::invalid_load);
}

TEST_CASE("rectangular section") {
    const ElementProps p = rectangular_section(2e7, 20e-3, 1e-3);
    CHECK(p.area == doctest::Approx(2e-5).epsilon(1e-14));
    CHECK(p.inertia == doctest::Approx(20e-3 * 1e-9 / 12.0).epsilon(1e-14));
}
