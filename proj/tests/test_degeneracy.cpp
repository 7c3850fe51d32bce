#include <cmath>
#include <random>

#include "doctest.h"
#include "support/random_instances.hpp"
#include "wsteiner/degeneracy.hpp"
#include "wsteiner/errors.hpp"
#include "wsteiner/oracle.hpp"

using namespace wsteiner;
using doctest::Approx;

namespace {

const DegeneracyRecord* find(const DegeneracyReport& r, const std::string& label, const std::string& query) {
    for (const auto& d : r.records) {
        if (d.label == label && d.query == query) return &d;
    }
    return nullptr;
}

TetInstance example_tet() {
    TetInstance t;
    t.vertices = {Point3{0, 0, 0}, Point3{2, 0, 0}, Point3{-2, 0, 3}, Point3{-1, -1, 2}};
    return t;
}

}  // namespace

TEST_CASE("edge frame coordinates") {
    const TetInstance t = example_tet();
    const EdgeCoords a4 = edge_frame_coords(t, PairedEdge::A1A2, t.a4());
    CHECK(a4.x == Approx(-1.0));
    CHECK(a4.y * a4.y + a4.z * a4.z == Approx(5.0));
    const EdgeCoords a2 = edge_frame_coords(t, PairedEdge::A1A2, t.a2());
    CHECK(a2.x == Approx(2.0));
    CHECK(a2.radial() < 1e-14);
    CHECK(a2.x_far == Approx(2.0));

    TetInstance bad = t;
    bad.vertices[1] = bad.vertices[0];
    CHECK_THROWS_AS(edge_frame_coords(bad, PairedEdge::A1A2, t.a3()), SolverError);
}

TEST_CASE("regular tetrahedron is non-degenerate with interior nodes") {
    TetInstance t;
    t.vertices = testing::regular_vertices();
    const WeightSystem w{1, 1, 1, 1, 1};
    const DegeneracyReport r = check_nondegenerate(t, w);
    CHECK(r.overall);
    CHECK(r.cone_torus_overall);
    REQUIRE(r.equal_weight_crosscheck.has_value());
    CHECK(*r.equal_weight_crosscheck);

    const OracleResult o = minimize_two_nodes(t, w);
    for (const auto& v : t.vertices) {
        CHECK(distance(o.o12, v) > 1e-3);
        CHECK(distance(o.o34, v) > 1e-3);
    }
}

TEST_CASE("point on the cone axis fails the cone record") {
    TetInstance t;
    t.vertices = {Point3{0, 0, 0}, Point3{1, 0, 0}, Point3{-2, 0, 0.0}, Point3{-1, 1, 1}};
    // A3 sits on the x axis behind A1.
    const DegeneracyReport r = check_nondegenerate(t, {1, 1, 1, 1, 1});
    const DegeneracyRecord* c = find(r, "cone_12", "A3");
    REQUIRE(c != nullptr);
    CHECK(c->lhs == 0.0);
    CHECK_FALSE(c->satisfied);
    CHECK_FALSE(r.overall);
}

TEST_CASE("equal-weight thresholds") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        const TetInstance t = testing::random_tet(rng);
        const DegeneracyReport r = check_nondegenerate(t, {1, 1, 1, 1, 1});
        for (const auto& d : r.records) {
            if (d.label.starts_with("cone") && d.applicable) CHECK(d.rhs == Approx(std::sqrt(3.0)).epsilon(1e-12));
        }
        if (r.equal_weight_crosscheck) CHECK(*r.equal_weight_crosscheck);
    }
}

TEST_CASE("report is invariant under rigid motion") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 50; ++i) {
        TetInstance t = testing::random_tet(rng);
        t.weights = testing::random_feasible_weights(rng);
        const WeightSystem w = WeightSystem::from(t.weights);
        const TetInstance m = testing::transformed(t, testing::random_rotation(rng), testing::gaussian3(rng));
        const DegeneracyReport a = check_nondegenerate(t, w), b = check_nondegenerate(m, w);
        CHECK(a.overall == b.overall);
        REQUIRE(a.records.size() == b.records.size());
        for (std::size_t k = 0; k < a.records.size(); ++k) {
            CHECK(a.records[k].lhs == Approx(b.records[k].lhs).epsilon(1e-8));
        }
    }
}

TEST_CASE("absorbed node is reported") {
    TetInstance t = example_tet();
    t.weights = {1.2, 0.9, 1.1, 1.0, 1.3, 1.1};
    const DegeneracyReport r = check_nondegenerate(t, WeightSystem::from(t.weights));
    const DegeneracyRecord* a = find(r, "absorb_1", "A1");
    REQUIRE(a != nullptr);
    CHECK_FALSE(a->satisfied);
    CHECK_FALSE(r.overall);
}

TEST_CASE("heavy spine collapses the nodes") {
    TetInstance t;
    t.vertices = testing::regular_vertices();
    const DegeneracyReport r = check_nondegenerate(t, {1, 1, 1, 1, 1.9});
    const DegeneracyRecord* s = find(r, "split", "X");
    REQUIRE(s != nullptr);
    CHECK_FALSE(s->satisfied);
}

TEST_CASE("infeasible weights propagate") {
    CHECK_THROWS_AS(check_nondegenerate(example_tet(), {1, 1, 1, 1, 2}), SolverError);
}
