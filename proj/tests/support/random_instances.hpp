#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wsteiner/degeneracy.hpp"
#include "wsteiner/equilibrium.hpp"
#include "wsteiner/geometry.hpp"

namespace wsteiner::testing {

inline Vec3 gaussian3(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    const double x = n(rng), y = n(rng), z = n(rng);
    return {x, y, z};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

struct Rotation {
    std::array<Vec3, 3> rows{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    Vec3 apply(const Vec3& v) const { return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)}; }
};

inline Rotation random_rotation(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
    const double len = std::sqrt(w * w + x * x + y * y + z * z);
    w /= len, x /= len, y /= len, z /= len;
    Rotation r;
    r.rows[0] = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)};
    r.rows[1] = {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)};
    r.rows[2] = {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)};
    return r;
}

inline TetInstance transformed(TetInstance tet, const Rotation& rot, const Vec3& shift, double scale = 1.0) {
    for (auto& v : tet.vertices) v = scale * rot.apply(v) + shift;
    return tet;
}

inline const std::array<Point3, 4>& regular_vertices() {
    static const std::array<Point3, 4> v{Point3{1, 1, 1}, Point3{-1, -1, 1}, Point3{-1, 1, -1}, Point3{1, -1, -1}};
    return v;
}

/// Regular tetrahedron with Gaussian jitter, then a random similarity.
inline TetInstance random_tet(std::mt19937_64& rng, double jitter = 0.35) {
    TetInstance tet;
    for (int i = 0; i < 4; ++i) tet.vertices[i] = regular_vertices()[i] + jitter * gaussian3(rng);
    return transformed(tet, random_rotation(rng), 3.0 * gaussian3(rng), uniform(rng, 0.5, 3.0));
}

inline Weights random_feasible_weights(std::mt19937_64& rng, double lo = 0.7, double hi = 1.4) {
    for (;;) {
        Weights w{uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi),
                  uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
        if (WeightSystem::from(w).feasible()) return w;
    }
}

struct CheckedCase {
    TetInstance tet;
    WeightSystem w;
};

/// Seeded random instances that pass the full non-degeneracy check.
inline std::vector<CheckedCase> checked_suite(std::uint64_t seed, std::size_t n, std::size_t* draws = nullptr) {
    std::mt19937_64 rng(seed);
    std::vector<CheckedCase> out;
    std::size_t tries = 0;
    while (out.size() < n && tries < 200 * n) {
        ++tries;
        TetInstance tet = random_tet(rng);
        tet.weights = random_feasible_weights(rng);
        const WeightSystem w = WeightSystem::from(tet.weights);
        try {
            if (check_nondegenerate(tet, w).overall) out.push_back({tet, w});
        } catch (const std::exception&) {
        }
    }
    if (draws) *draws = tries;
    return out;
}

}  // namespace wsteiner::testing
