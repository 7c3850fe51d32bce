#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wsteiner/equilibrium.hpp"
#include "wsteiner/geometry.hpp"

namespace wsteiner {

enum class PairedEdge { A1A2, A4A3 };

/// Coordinates of a point in an orthonormal frame whose x-axis carries the edge,
/// origin at the near vertex (A1 or A4), so x_near = 0 < x_far = edge length.
struct EdgeCoords {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double x_near = 0.0;
    double x_far = 0.0;

    double radial() const;  // sqrt(y^2 + z^2)
};

EdgeCoords edge_frame_coords(const TetInstance& tet, PairedEdge edge, const Point3& c);

struct DegeneracyRecord {
    std::string label;  // cone_12, torus_12, cone_34, torus_34, split, absorb_1..absorb_4
    std::string query;  // name of the query point (A1..A4, X)
    Point3 query_point{};
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
    bool applicable = true;  // cone records do not apply to points over the segment
};

struct DegeneracyReport {
    std::vector<DegeneracyRecord> records;
    bool overall = false;
    /// Conjunction of the cone and torus records only.
    bool cone_torus_overall = false;
    /// With all six weights equal: whether every threshold matched its closed form
    /// (sqrt 3, r/3, 2r/3 with r = (sqrt 3 / 2) a).
    std::optional<bool> equal_weight_crosscheck;
};

/// Cone and torus inequalities for both paired edges, plus exact subgradient tests that
/// rule out node collapse (split) and absorption of a node into a terminal (absorb_i).
/// `tet` must be in canonical order.
DegeneracyReport check_nondegenerate(const TetInstance& tet, const WeightSystem& w);

}  // namespace wsteiner
