#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support/random_instances.hpp"
#include "wsteiner/errors.hpp"
#include "wsteiner/oracle.hpp"
#include "wsteiner/steiner.hpp"

using namespace wsteiner;
using doctest::Approx;

namespace {

// The half-turn about the z axis maps each edge onto itself (A1 <-> A2, A3 <-> A4),
// so both common-perpendicular feet are edge midpoints.
TetInstance symmetric_tet(double theta_deg = 70.0, double a12 = 2.0, double a34 = 2.6, double h = 0.9) {
    const double th = theta_deg * std::numbers::pi / 180.0;
    const Vec3 u12{1, 0, 0}, u34{std::cos(th), std::sin(th), 0};
    const Point3 f12{0, 0, h}, f34{0, 0, -h};
    TetInstance t;
    t.vertices = {f12 - 0.5 * a12 * u12, f12 + 0.5 * a12 * u12, f34 + 0.5 * a34 * u34, f34 - 0.5 * a34 * u34};
    return t;
}

TetInstance example_tet() {
    TetInstance t;
    t.vertices = {Point3{0, 0, 0}, Point3{2, 0, 0}, Point3{-2, 0, 3}, Point3{-1, -1, 2}};
    return t;
}

}  // namespace

TEST_CASE("midpoints are a fixed point of the symmetric maps") {
    for (double theta : {30.0, 70.0, 90.0, 140.0}) {
        const TetInstance t = symmetric_tet(theta);
        const SkewFrame f = skew_frame(t);
        const SimpsonMaps m = fixed_point_maps(f, {1, 1, 1, 1, 1});
        CHECK(m.f34(f.m12) == Approx(f.m34).epsilon(1e-14));
        CHECK(m.f12(f.m34) == Approx(f.m12).epsilon(1e-14));

        const SimpsonSolution s = solve_simpson(f, {1, 1, 1, 1, 1});
        CHECK(std::abs(s.t12 - f.m12) < 1e-12 * f.scale());
        CHECK(std::abs(s.t34 - f.m34) < 1e-12 * f.scale());

        // Nodes on the symmetry axis.
        const SimpsonSolution r = recover_nodes(t, f, {1, 1, 1, 1, 1}, s);
        CHECK(std::hypot(r.O12.x, r.O12.y) < 1e-10);
        CHECK(std::hypot(r.O34.x, r.O34.y) < 1e-10);
    }
}

TEST_CASE("orthogonal edges drop the cross terms") {
    TetInstance t;
    t.vertices = {Point3{0.2, 0, 0}, Point3{1.7, 0, 0}, Point3{0, 1.9, 1.4}, Point3{0, 0.3, 1.4}};
    const SkewFrame f = skew_frame(t);
    const WeightSystem w{1.1, 0.9, 1.0, 1.2, 1.05};
    const SimpsonMaps m = fixed_point_maps(f, w);
    for (double t12 : {0.1, 0.8, 1.5}) {
        const double S = m.S(t12);
        CHECK(m.f34(t12) == Approx(m.edge34.h_prime * S / (m.edge34.r + S)).epsilon(1e-14));
    }
}

TEST_CASE("tolerance zero does not converge") {
    const SkewFrame f = skew_frame(example_tet());
    SimpsonOptions o;
    o.tol = 0.0;
    o.max_iter = 200;
    CHECK_THROWS_AS(solve_simpson(f, {1, 1, 1, 1, 1}, o), NoConvergenceError);
}

TEST_CASE("worked example tree matches the oracle") {
    const TetInstance t = example_tet();
    const SteinerRun run = construct_steiner_tree(t);
    REQUIRE(run.solution.nodes_recovered);
    const OracleResult o = minimize_two_nodes(t, run.weights);
    CHECK(run.solution.cost == Approx(o.cost).epsilon(1e-10));
    CHECK(distance(run.solution.O12, o.o12) < 1e-8);
    CHECK(distance(run.solution.O34, o.o34) < 1e-8);
}

TEST_CASE("regular tetrahedron tree") {
    TetInstance t;
    t.vertices = testing::regular_vertices();
    const SteinerRun run = construct_steiner_tree(t);
    CHECK(run.solution.cost == Approx(2.0 + 2.0 * std::sqrt(6.0)).epsilon(1e-13));
    // Cheaper than the best single Fermat point.
    const std::array<double, 4> ones{1, 1, 1, 1};
    CHECK(run.solution.cost < minimize_single_node(t, ones).cost);
    const SteinerTree tree = build_tree(t, run.weights, run.solution.O12, run.solution.O34);
    CHECK(tree.edges[0].length == Approx(tree.edges[1].length).epsilon(1e-12));
    CHECK(tree.cost == Approx(run.solution.cost).epsilon(1e-15));
}

TEST_CASE("recovered nodes satisfy the equilibrium conditions") {
    std::mt19937_64 rng(51);
    const auto suite = testing::checked_suite(51, 40);
    REQUIRE(suite.size() == 40);
    for (const auto& c : suite) {
        const SteinerRun run = construct_steiner_tree(c.tet);
        const SimpsonSolution& s = run.solution;
        const Stationarity st = node_stationarity(c.tet, c.w, s.O12, s.O34);
        CHECK(st.node12 < 1e-8);
        CHECK(st.node34 < 1e-8);
        CHECK(st.total < 1e-8);
        const NodeAngles a = node_angles(c.w);
        CHECK(angle_between(c.tet.a1() - s.O12, c.tet.a2() - s.O12) == Approx(a.alpha12).epsilon(1e-8));
        CHECK(angle_between(c.tet.a3() - s.O34, c.tet.a4() - s.O34) == Approx(a.alpha34).epsilon(1e-8));
        for (const auto& v : c.tet.vertices) {
            CHECK(distance(s.O12, v) > 1e-8);
            CHECK(distance(s.O34, v) > 1e-8);
        }
    }
}

TEST_CASE("collapsed optimum is not recovered as a tree") {
    TetInstance t;
    t.vertices = testing::regular_vertices();
    t.weights = {1, 1, 1, 1, 1.9, 1.9};
    try {
        (void)construct_steiner_tree(t);
        FAIL("expected NodeOffSegment");
    } catch (const SolverError& e) {
        CHECK(e.code() == ErrorCode::NodeOffSegment);
    }
}

TEST_CASE("star cost when nodes coincide") {
    const TetInstance t = example_tet();
    const Point3 p{0.3, -0.2, 1.1};
    double star = 0.0;
    for (const auto& v : t.vertices) star += distance(v, p);
    CHECK(tree_cost(t, {1, 1, 1, 1, 1}, p, p) == Approx(star).epsilon(1e-15));
}

TEST_CASE("swapping A3 and A4 with equal weights mirrors the cost") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 20; ++i) {
        TetInstance t = testing::random_tet(rng);
        t.weights = testing::random_feasible_weights(rng);
        t.weights.b4 = t.weights.b3;
        const WeightSystem w = WeightSystem::from(t.weights);
        const Point3 o12 = t.a1() + 0.3 * testing::gaussian3(rng);
        const Point3 o34 = t.a3() + 0.3 * testing::gaussian3(rng);
        TetInstance s = t;
        std::swap(s.vertices[2], s.vertices[3]);
        CHECK(tree_cost(s, w, o12, o34) == Approx(tree_cost(t, w, o12, o34)).epsilon(1e-14));
    }
}

TEST_CASE("equal-weight iterates from the foot offset are monotone") {
    std::mt19937_64 rng(53);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const TetInstance t = testing::random_tet(rng);
        const SkewFrame f = skew_frame(t);
        SimpsonOptions o;
        o.start = StartRule::foot_offset;
        o.record_trace = true;
        SimpsonSolution s;
        try {
            s = solve_simpson(f, {1, 1, 1, 1, 1}, o);
        } catch (const SolverError&) {
            continue;
        }
        if (s.trace.size() < 3) continue;
        ++checked;
        const double d0 = s.trace[1].first - s.trace[0].first;
        bool monotone = true;
        for (std::size_t k = 1; k + 1 < s.trace.size(); ++k) {
            const double d = s.trace[k + 1].first - s.trace[k].first;
            if (d * d0 < 0 && std::abs(d) > 1e-13 * f.scale()) monotone = false;
        }
        CHECK(monotone);
    }
    CHECK(checked > 30);
}
