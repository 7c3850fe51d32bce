#include <array>
#include <cmath>
#include <random>

#include "doctest.h"
#include "support/random_instances.hpp"
#include "wsteiner/errors.hpp"
#include "wsteiner/oracle.hpp"

using namespace wsteiner;
using doctest::Approx;

namespace {

double star_cost(std::span<const Point3> p, std::span<const double> w, const Point3& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) f += w[i] * distance(p[i], x);
    return f;
}

}  // namespace

TEST_CASE("median of an equilateral triangle is its center") {
    const std::array<Point3, 3> p{Point3{1, 0, 0}, Point3{-0.5, std::sqrt(3.0) / 2, 0}, Point3{-0.5, -std::sqrt(3.0) / 2, 0}};
    const std::array<double, 3> w{1, 1, 1};
    const MedianResult m = weighted_median(p, w);
    CHECK(norm(m.point) < 1e-12);
    CHECK_FALSE(m.terminal.has_value());
}

TEST_CASE("dominant weight absorbs the median") {
    const std::array<Point3, 3> p{Point3{0, 0, 0}, Point3{3, 1, 0}, Point3{1, 2, 2}};
    const std::array<double, 3> w{5, 1, 1};
    const MedianResult m = weighted_median(p, w);
    REQUIRE(m.terminal.has_value());
    CHECK(*m.terminal == 0);
    CHECK(m.point == p[0]);
}

TEST_CASE("median has zero finite-difference gradient") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        std::array<Point3, 5> p;
        std::array<double, 5> w;
        for (int k = 0; k < 5; ++k) {
            p[k] = 2.0 * testing::gaussian3(rng);
            w[k] = testing::uniform(rng, 0.5, 1.5);
        }
        const MedianResult m = weighted_median(p, w);
        if (m.terminal) continue;
        double scale = 0.0;
        for (const auto& a : p)
            for (const auto& b : p) scale = std::max(scale, distance(a, b));
        const double h = 1e-6 * scale;
        Vec3 g;
        for (int axis = 0; axis < 3; ++axis) {
            Vec3 e;
            (axis == 0 ? e.x : axis == 1 ? e.y : e.z) = h;
            const double d = (star_cost(p, w, m.point + e) - star_cost(p, w, m.point - e)) / (2 * h);
            (axis == 0 ? g.x : axis == 1 ? g.y : g.z) = d;
        }
        CHECK(norm(g) < 1e-6);
    }
}

TEST_CASE("median input validation") {
    const std::array<Point3, 2> p{Point3{0, 0, 0}, Point3{1, 0, 0}};
    const std::array<double, 2> bad{1, -1};
    CHECK_THROWS_AS(weighted_median(p, bad), SolverError);
    const std::array<Point3, 1> one{Point3{0, 0, 0}};
    const std::array<double, 1> w1{1};
    CHECK_THROWS_AS(weighted_median(one, w1), SolverError);
}

TEST_CASE("regular tetrahedron two-node optimum") {
    TetInstance t;
    t.vertices = testing::regular_vertices();
    const OracleResult r = minimize_two_nodes(t, {1, 1, 1, 1, 1});
    // Nodes on the z axis at +-(1 - sqrt(2/3)); cost 2 + 2 sqrt(6).
    const double z = 1.0 - std::sqrt(2.0 / 3.0);
    CHECK(r.cost == Approx(2.0 + 2.0 * std::sqrt(6.0)).epsilon(1e-12));
    CHECK(distance(r.o12, Point3{0, 0, z}) < 1e-8);
    CHECK(distance(r.o34, Point3{0, 0, -z}) < 1e-8);
    CHECK_FALSE(r.collapsed);
    CHECK_FALSE(r.absorbed);
}

TEST_CASE("oracle matches a direct minimization") {
    // Frozen from an independent Nelder-Mead + BFGS run on the 6-variable cost.
    TetInstance t;
    t.vertices = {Point3{0, 0, 0}, Point3{1, 0.2, 0}, Point3{0.3, 0.4, 3}, Point3{1.2, -0.3, 2.8}};
    t.weights = {1, 1.1, 0.9, 1.05, 1.2, 1.0};
    const OracleResult r = minimize_two_nodes(t, WeightSystem::from(t.weights));
    CHECK(r.cost == Approx(5.008861365713162).epsilon(1e-11));
    CHECK(distance(r.o12, Point3{0.6712256903321301, 0.10972483978681302, 0.28547434591321597}) < 1e-6);
    CHECK(distance(r.o34, Point3{0.8684065431455763, -0.042304643331935954, 2.514589297382209}) < 1e-6);
}

TEST_CASE("heavy terminal absorbs its node") {
    // Frozen optimum: O12 sits on A1.
    TetInstance t;
    t.vertices = {Point3{0, 0, 0}, Point3{2, 0, 0}, Point3{-2, 0, 3}, Point3{-1, -1, 2}};
    t.weights = {1.2, 0.9, 1.1, 1.0, 1.3, 1.1};
    const OracleResult r = minimize_two_nodes(t, WeightSystem::from(t.weights));
    CHECK(r.cost == Approx(6.625038046970328).epsilon(1e-11));
    CHECK(norm(r.o12) < 1e-7);
    CHECK(r.absorbed);
}

TEST_CASE("dominant spine weight collapses the nodes") {
    TetInstance t;
    t.vertices = testing::regular_vertices();
    const OracleResult r = minimize_two_nodes(t, {1, 1, 1, 1, 1.9});
    CHECK(r.collapsed);
    CHECK(r.gradient_norm < 1e-6);
}

TEST_CASE("oracle cost trace and restarts") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 20; ++i) {
        TetInstance t = testing::random_tet(rng);
        t.weights = testing::random_feasible_weights(rng);
        const WeightSystem w = WeightSystem::from(t.weights);
        OracleOptions o;
        o.seed = 100 + i;
        const OracleResult r = minimize_two_nodes(t, w, o);
        for (std::size_t k = 1; k < r.cost_trace.size(); ++k) {
            CHECK(r.cost_trace[k] <= r.cost_trace[k - 1] * (1 + 1e-14));
        }
        for (double c : r.restart_costs) CHECK(c == Approx(r.cost).epsilon(1e-8));
        const OracleResult again = minimize_two_nodes(t, w, o);
        CHECK(again.cost == r.cost);
        CHECK(again.o12 == r.o12);
    }
}

TEST_CASE("single node oracle on the regular tetrahedron") {
    TetInstance t;
    t.vertices = testing::regular_vertices();
    const std::array<double, 4> w{1, 1, 1, 1};
    const SingleNodeResult r = minimize_single_node(t, w);
    CHECK(norm(r.point) < 1e-12);
    CHECK(r.cost == Approx(4 * std::sqrt(3.0)).epsilon(1e-14));
}
