#include <doctest.h>

#include <sstream>

#include "corofin/errors.hpp"
#include "corofin/sweep.hpp"

using namespace corofin;
using nlohmann::json;

namespace {

SweepSpec quick_spec(SweepAxis axis) {
    SweepSpec spec;
    spec.axis = axis;
    spec.magnitudes = {0.2};
    spec.solver.n_inc = 5;
    return spec;
}

std::string csv_of(const SweepReport& r) {
    std::ostringstream out;
    write_sweep_csv(out, r);
    return out.str();
}

const TrendCheck& trend(const SweepReport& r, const std::string& property) {
    for (const TrendCheck& t : r.trends) {
        if (t.property == property) return t;
    }
    FAIL("no trend " << property);
    return r.trends.front();
}

}  // namespace

TEST_CASE("sweep spec parsing") {
    const SweepSpec spec = sweep_spec_from_json(json::parse(R"({
        "axis": "inclination", "values": [-10, 0, 10], "load_node": 3,
        "magnitudes": [0.2, 0.4], "report_nodes": [2, 3],
        "base": {"n_crossbeams": 4}, "solver": {"n_inc": 20},
        "probe": {"f_lo": 0.1, "f_hi": 4, "resolution": 0.02}
    })"));
    CHECK(spec.axis == SweepAxis::inclination);
    CHECK(spec.n_variants() == 3);
    CHECK(spec.load_node == 3);
    CHECK(spec.report_nodes == std::vector<int>{2, 3});
    CHECK(spec.base.n_crossbeams == 4);
    CHECK(spec.solver.n_inc == 20);
    CHECK(spec.probe.f_hi == 4.0);
    CHECK(spec.label(0) == "-10");
    CHECK(spec.params(2).inclination == 10.0);
    CHECK(spec.params(2).n_crossbeams == 4);

    const SweepSpec conn = sweep_spec_from_json(
        json::parse(R"({"axis": "connection", "values": ["simple", "rigid"], "magnitudes": [0.4]})"));
    CHECK(conn.label(0) == "simple");
    CHECK(conn.params(1).connection == Connection::rigid);
    CHECK(conn.load_node == 2);
}

TEST_CASE("invalid sweep specs are rejected") {
    const char* bad[] = {
        R"({"axis": "height", "values": [1], "magnitudes": [0.2]})",
        R"({"axis": "top_angle", "values": [], "magnitudes": [0.2]})",
        R"({"axis": "top_angle", "values": [20], "magnitudes": []})",
        R"({"axis": "top_angle", "values": [20], "magnitudes": [0.4, 0.2]})",
        R"({"axis": "top_angle", "values": [20], "magnitudes": [-0.2]})",
        R"({"axis": "top_angle", "values": [95], "magnitudes": [0.2]})",
        R"({"axis": "n_crossbeams", "values": [2.5], "magnitudes": [0.2]})",
        R"({"axis": "connection", "values": [1], "magnitudes": [0.2]})",
        R"({"axis": "top_angle", "values": [20], "magnitudes": [0.2], "speed": 1})",
        R"({"axis": "top_angle", "values": [20], "magnitudes": [0.2], "probe": {"f_lo": 2, "f_hi": 1}})",
        R"({"axis": "top_angle", "values": [20], "magnitudes": [0.2], "load_node": 0})",
        R"([1, 2])",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(sweep_spec_from_json(json::parse(text)), Error);
    }
}

TEST_CASE("connection study without probing") {
    SweepSpec spec = quick_spec(SweepAxis::connection);
    spec.connections = {Connection::simple, Connection::rigid};
    spec.report_nodes = {1, 2, 3};
    const SweepReport r = run_sweep(spec, false, false);

    REQUIRE(r.variants.size() == 2);
    CHECK(r.variants[0].rows.size() == 3);
    for (const VariantResult& v : r.variants) {
        CHECK(v.probe == ProbeOutcome::not_run);
        for (const SweepRow& row : v.rows) CHECK(row.converged);
    }
    REQUIRE(r.trends.size() == 1);
    CHECK(r.trends[0].property == "displacement");
    CHECK(r.trends[0].verdict == Verdict::holds);
    REQUIRE(r.displacement_ratio.size() == 1);
    CHECK(r.displacement_ratio[0] > 1.5);
    CHECK(r.displacement_ratio[0] < 4.0);

    const std::string csv = csv_of(r);
    CHECK(csv.rfind("variant,load,node,u,w,theta,converged,iterations,max_force\n", 0) == 0);
    CHECK(csv.find("simple,0.2,1,") != std::string::npos);
    CHECK(csv.find("rigid,0.2,3,") != std::string::npos);

    const json summary = sweep_summary(r);
    CHECK(summary["axis"] == "connection");
    CHECK(summary["trends"][0]["verdict"] == "holds");
    CHECK(summary["simple_rigid_displacement_ratio"].size() == 1);
}

TEST_CASE("parallel sweeps match serial sweeps") {
    SweepSpec spec = quick_spec(SweepAxis::top_angle);
    spec.values = {20, 30, 40};
    const std::string serial = csv_of(run_sweep(spec, false, false));
    const std::string parallel = csv_of(run_sweep(spec, false, true));
    CHECK(serial == parallel);
    CHECK(serial == csv_of(run_sweep(spec, false, false)));
}

TEST_CASE("probing reports max force and its ordering") {
    SweepSpec spec = quick_spec(SweepAxis::n_crossbeams);
    spec.values = {3, 2};
    spec.solver.n_inc = 10;
    spec.probe = {0.05, 5.0, 0.05};
    const SweepReport r = run_sweep(spec, true, false);

    const VariantResult& three = r.variants[0];
    const VariantResult& two = r.variants[1];
    REQUIRE(three.probe == ProbeOutcome::found);
    REQUIRE(two.probe == ProbeOutcome::found);
    CHECK(two.max_force < three.max_force);
    CHECK(trend(r, "max_force").verdict == Verdict::holds);
    CHECK(trend(r, "displacement").verdict == Verdict::holds);

    const json summary = sweep_summary(r);
    CHECK(summary["variants"][0]["max_force"].get<double>() == three.max_force);
}

TEST_CASE("censored probes leave the force trend undetermined") {
    SweepSpec spec = quick_spec(SweepAxis::n_crossbeams);
    spec.values = {2, 3};
    spec.probe = {0.05, 0.3, 0.05};
    const SweepReport r = run_sweep(spec, true, false);
    for (const VariantResult& v : r.variants) CHECK(v.probe == ProbeOutcome::censored);
    CHECK(trend(r, "max_force").verdict == Verdict::undetermined);
    CHECK(csv_of(r).find(",>=0.3\n") != std::string::npos);
    CHECK(sweep_summary(r)["variants"][0]["max_force_at_least"] == 0.3);
}

TEST_CASE("a reversed displacement ordering is reported as violated") {
    // Under 0.8 N the +10 degree finger is stiffer than the -10 degree one.
    SweepSpec spec = quick_spec(SweepAxis::inclination);
    spec.values = {-10, 10};
    spec.magnitudes = {0.8};
    spec.solver.n_inc = 10;
    const SweepReport r = run_sweep(spec, false, false);
    CHECK(trend(r, "displacement").verdict == Verdict::violated);
}

TEST_CASE("report nodes beyond the finger are an error") {
    SweepSpec spec = quick_spec(SweepAxis::n_crossbeams);
    spec.values = {2};
    spec.report_nodes = {4};
    CHECK_THROWS_AS(run_sweep(spec, false, false), Error);
}
