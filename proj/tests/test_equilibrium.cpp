#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "support/random_instances.hpp"
#include "wsteiner/equilibrium.hpp"
#include "wsteiner/errors.hpp"

using namespace wsteiner;
using doctest::Approx;

namespace {

double deg(double r) { return r * 180.0 / std::numbers::pi; }

}  // namespace

TEST_CASE("equal weights give 120 degree angles") {
    const NodeAngles a = node_angles({1, 1, 1, 1, 1});
    for (double v : {a.alpha12, a.alpha1, a.alpha2, a.alpha34, a.alpha3, a.alpha4}) {
        CHECK(std::abs(deg(v) - 120.0) < 1e-9);
    }
}

TEST_CASE("3-4-5 weight triangle") {
    const NodeAngles a = node_angles({3, 4, 3, 4, 5});
    CHECK(deg(a.alpha12) == Approx(90.0).epsilon(1e-12));
    CHECK(deg(a.alpha1) == Approx(143.130102354).epsilon(1e-10));
    CHECK(deg(a.alpha2) == Approx(126.869897646).epsilon(1e-10));
    CHECK(a.alpha12 + a.alpha1 + a.alpha2 == Approx(2 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("infeasible weights are rejected") {
    CHECK_THROWS_AS(node_angles({1, 1, 1, 1, 2}), SolverError);
    CHECK_THROWS_AS(melzak_quantities(1.0, 0.0, 1, 1, 2), SolverError);
    CHECK_THROWS_AS(cone_quantities(1.0, 1, 1, 2), SolverError);
    CHECK_FALSE(WeightSystem{1, 1, 1, 1, 2}.feasible());
    CHECK_FALSE(WeightSystem{1, 1, 1, 3, 1}.feasible());
}

TEST_CASE("angle sums and scale invariance") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 200; ++i) {
        const WeightSystem w = WeightSystem::from(testing::random_feasible_weights(rng, 0.3, 3.0));
        const NodeAngles a = node_angles(w);
        CHECK(a.alpha1 + a.alpha2 + a.alpha12 == Approx(2 * std::numbers::pi).epsilon(1e-10));
        CHECK(a.alpha3 + a.alpha4 + a.alpha34 == Approx(2 * std::numbers::pi).epsilon(1e-10));
        const double c = testing::uniform(rng, 0.1, 10.0);
        const NodeAngles b = node_angles({c * w.b1, c * w.b2, c * w.b3, c * w.b4, c * w.b_st});
        CHECK(b.alpha12 == Approx(a.alpha12).epsilon(1e-12));
        CHECK(b.alpha4 == Approx(a.alpha4).epsilon(1e-12));
    }
}

TEST_CASE("unit vectors at the node angles balance") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        const WeightSystem w = WeightSystem::from(testing::random_feasible_weights(rng, 0.3, 3.0));
        const NodeAngles a = node_angles(w);
        // l along +x; u1 at angle alpha2 from l, u2 at alpha1 on the other side.
        const Vec3 l{1, 0, 0};
        const Vec3 u1{std::cos(a.alpha2), std::sin(a.alpha2), 0};
        const Vec3 u2{std::cos(a.alpha1), -std::sin(a.alpha1), 0};
        CHECK(norm(w.b1 * u1 + w.b2 * u2 + w.b_st * l) < 1e-12 * (w.b1 + w.b2 + w.b_st));
        CHECK(angle_between(u1, u2) == Approx(a.alpha12).epsilon(1e-10));
    }
}

TEST_CASE("Melzak quantities") {
    const MelzakTriangle eq = melzak_quantities(2.0, 0.5, 1, 1, 1);
    CHECK(eq.r == Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(eq.h_prime == Approx(1.5).epsilon(1e-14));
    CHECK(melzak_quantities(1.0, 0.0, 3, 4, 5).r == Approx(0.48).epsilon(1e-14));

    const MelzakTriangle a = melzak_quantities(1.3, 0.2, 1.1, 0.9, 1.2);
    const MelzakTriangle b = melzak_quantities(2.6, 0.4, 1.1, 0.9, 1.2);
    CHECK(b.r == Approx(2 * a.r).epsilon(1e-14));
    CHECK(b.h_prime == Approx(2 * a.h_prime).epsilon(1e-14));
}

TEST_CASE("cone and torus quantities") {
    const ConeQuantities eq = cone_quantities(1.0, 1, 1, 1);
    CHECK(eq.R == Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
    CHECK(eq.torus_offset() == Approx(1 / (2 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(eq.ratio_threshold == Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(cone_quantities(1.0, 3, 4, 5).R == Approx(0.5).epsilon(1e-14));
    CHECK(cone_quantities(2.0, 3, 4, 5).R == Approx(1.0).epsilon(1e-14));
}
