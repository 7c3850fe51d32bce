#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "wsteiner/equilibrium.hpp"
#include "wsteiner/geometry.hpp"

namespace wsteiner {

/// The two intercept maps of the Simpson-line system, solved in closed form:
///   t34 = f34(t12) = (h34' S(t12) + r34 t12 cos phi) / (r34 + S(t12))
///   t12 = f12(t34) = (h12' S(t34) + r12 t34 cos phi) / (r12 + S(t34))
/// with S(t) = sqrt(H^2 + t^2 sin^2 phi), the distance from the intercept to the other line.
struct SimpsonMaps {
    double H = 0.0;
    double cos_phi = 0.0;
    double sin_phi = 0.0;
    MelzakTriangle edge12;
    MelzakTriangle edge34;

    double S(double t) const;
    double f34(double t12) const;
    double f12(double t34) const;
    /// Collinearity residuals of T12, T34 and the apex on each edge (dimensionless).
    double residual34(double t12, double t34) const;
    double residual12(double t12, double t34) const;
};

SimpsonMaps fixed_point_maps(const SkewFrame& frame, const WeightSystem& w);

enum class StartRule {
    midpoint,     // t12(0) = m12
    foot_offset,  // t12(0) = k1, the unweighted variant's start
};

struct SimpsonOptions {
    double tol = 1e-12;  // relative to frame.scale()
    int max_iter = 10000;
    StartRule start = StartRule::midpoint;
    bool record_trace = false;
};

struct SimpsonSolution {
    double t12 = 0.0;
    double t34 = 0.0;
    Point3 T12{};
    Point3 T34{};
    Point3 O12{};
    Point3 O34{};
    bool nodes_recovered = false;
    double cost = 0.0;
    int iterations = 0;
    std::array<double, 2> residuals{};  // {edge34 equation, edge12 equation}
    std::vector<std::pair<double, double>> trace;
};

SimpsonSolution solve_simpson(const SkewFrame& frame, const WeightSystem& w, const SimpsonOptions& opts = {});

/// Places O12 and O34 as weighted Fermat-Torricelli points of (A1, A2, T34) and (A3, A4, T12)
/// and verifies the order T12, O12, O34, T34 along the Simpson line.
SimpsonSolution recover_nodes(const TetInstance& tet, const SkewFrame& frame, const WeightSystem& w,
                              SimpsonSolution sol);

double tree_cost(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34);

struct TreeEdge {
    std::string from;
    std::string to;
    Point3 p{};
    Point3 q{};
    double weight = 0.0;
    double length = 0.0;
};

struct SteinerTree {
    std::array<TreeEdge, 5> edges;
    double cost = 0.0;
};

/// Edges in the fixed order A1-O12, A2-O12, A3-O34, A4-O34, O12-O34.
SteinerTree build_tree(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34);

struct Stationarity {
    double node12 = 0.0;  // |B1 a1 + B2 a2 - B_ST l|, unit vectors
    double node34 = 0.0;  // |B3 a3 + B4 a4 + B_ST l|
    double total = 0.0;   // |sum_i B_i a_i|
};

Stationarity node_stationarity(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34);

/// Frame, weights and the recovered solution for a canonical instance.
struct SteinerRun {
    SkewFrame frame;
    WeightSystem weights;
    SimpsonSolution solution;
};

SteinerRun construct_steiner_tree(const TetInstance& canonical, const SimpsonOptions& opts = {});

}  // namespace wsteiner
