#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wsteiner/equilibrium.hpp"
#include "wsteiner/geometry.hpp"

namespace wsteiner {

struct MedianOptions {
    double tol = 1e-12;  // on |sum w_i e_i| / sum w_i
    int max_iter = 10000;
    bool strict = true;  // throw NoConvergence when the tolerance is missed
};

struct MedianResult {
    Point3 point{};
    double residual = 0.0;  // unsmoothed first-order residual |sum w_i (x - P_i)/|x - P_i||
    int iterations = 0;
    std::optional<std::size_t> terminal;  // set when a terminal absorbs the median
};

/// Minimizes sum_i w_i |x - P_i|. Weiszfeld steps with epsilon-smoothed distances,
/// a terminal-dominance test up front, and a Newton polish on the unsmoothed objective.
MedianResult weighted_median(std::span<const Point3> points, std::span<const double> weights,
                             const MedianOptions& opts = {});

struct OracleOptions {
    double tol = 1e-13;  // node movement per sweep, relative to the instance scale
    int max_iter = 200000;
    int restarts = 8;
    std::uint64_t seed = 0;
};

struct OracleResult {
    Point3 o12{};
    Point3 o34{};
    double cost = 0.0;
    int iterations = 0;          // sweeps in the winning restart
    double gradient_norm = 0.0;  // min-norm subgradient of the objective at the result
    std::vector<double> cost_trace;     // winning restart, one entry per sweep
    std::vector<double> restart_costs;  // final cost of every restart
    bool collapsed = false;             // O12 == O34
    bool absorbed = false;              // a node sits on a terminal
};

/// Sum of weighted edge lengths of the full topology with nodes o12, o34.
double two_node_cost(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34);

/// Norm of the minimum-norm subgradient of the two-node objective.
double two_node_residual(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34);

/// Alternating weighted-median minimization from seeded random starts in the bounding box.
/// `tet` must already be in canonical (12|34) order.
OracleResult minimize_two_nodes(const TetInstance& tet, const WeightSystem& w, const OracleOptions& opts = {});

struct SingleNodeResult {
    Point3 point{};
    double cost = 0.0;
    int iterations = 0;
    double gradient_norm = 0.0;
};

/// Weighted median of the four vertices (the single-node tree).
SingleNodeResult minimize_single_node(const TetInstance& tet, std::span<const double, 4> weights);

}  // namespace wsteiner
