#pragma once

#include <array>
#include <string>
#include <string_view>

#include "wsteiner/vec3.hpp"

namespace wsteiner {

/// Which two vertex pairs carry the interior nodes.
enum class Pairing { P12_34, P13_24, P14_23 };

std::string_view to_string(Pairing p);
/// Parses "12-34", "13-24" or "14-23"; throws SolverError(InvalidInput) otherwise.
Pairing parse_pairing(std::string_view text);

struct Weights {
    double b1 = 1.0;
    double b2 = 1.0;
    double b3 = 1.0;
    double b4 = 1.0;
    double b12 = 1.0;
    double b34 = 1.0;

    /// Effective weight of the node-to-node edge; the only way b12, b34 enter any formula.
    double b_st() const { return 0.5 * (b12 + b34); }
};

/// Four vertices, six weights and the pairing. Solvers always read the (12|34) pairing;
/// call `canonical()` first for the other two.
struct TetInstance {
    std::array<Point3, 4> vertices{};
    Weights weights{};
    Pairing pairing = Pairing::P12_34;

    const Point3& a1() const { return vertices[0]; }
    const Point3& a2() const { return vertices[1]; }
    const Point3& a3() const { return vertices[2]; }
    const Point3& a4() const { return vertices[3]; }

    /// Validates finiteness and positive weights; throws SolverError(InvalidInput).
    void validate() const;

    /// Relabels vertices and weights so the selected pairing becomes (12|34).
    TetInstance canonical() const;

    /// Original vertex index (0-based) of each canonical slot.
    std::array<int, 4> canonical_order() const;

    /// Advisory only: A1A4 + A2A3 > A1A2 + A3A4.
    bool standing_assumption_holds() const;
};

/// Where the common-perpendicular feet fall relative to the two paired segments.
enum class FrameConfig {
    both_feet_outside_behind,
    foot_inside_12,
    foot_inside_34,
    both_inside,
    mixed,
};

std::string_view to_string(FrameConfig c);

/// Common-perpendicular decomposition of edge A1A2 and edge A4A3.
/// Coordinates t run along u12 (A1->A2) from foot12 and along u34 (A4->A3) from foot34.
struct SkewFrame {
    double H = 0.0;      // |det| form
    double phi = 0.0;    // angle between A1->A2 and A4->A3
    Point3 foot12{};     // A1''
    Point3 foot34{};     // A4''
    double k1 = 0.0;     // A1 = foot12 + k1*u12
    double k2 = 0.0;     // A4 = foot34 + k2*u34
    double a12 = 0.0;
    double a34 = 0.0;
    double m12 = 0.0;    // midpoint offsets
    double m34 = 0.0;
    Vec3 u12{};
    Vec3 u34{};
    FrameConfig config = FrameConfig::mixed;
    bool intersecting = false;  // H below tolerance; twist undefined downstream

    double cos_phi() const;
    double sin_phi() const;
    double scale() const;

    Point3 point12(double t) const { return foot12 + t * u12; }
    Point3 point34(double t) const { return foot34 + t * u34; }

    /// Distance from foot12 + t*u12 to line 34, and symmetric.
    double dist_to_line34(double t12) const;
    double dist_to_line12(double t34) const;
};

/// Parallel-edge threshold on sin(phi).
inline constexpr double kParallelSinTol = 1e-12;
/// Relative threshold for H under which the lines are treated as intersecting.
inline constexpr double kIntersectTol = 1e-12;

double interedge_angle(const TetInstance& tet);
SkewFrame skew_frame(const TetInstance& tet);

/// H from the determinant formula, without building a frame.
double common_perpendicular_length(const TetInstance& tet);

}  // namespace wsteiner
