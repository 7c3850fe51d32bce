#pragma once

#include <array>

#include "wsteiner/geometry.hpp"

namespace wsteiner {

/// Terminal weights plus the effective node-edge weight B_ST.
struct WeightSystem {
    double b1 = 1.0;
    double b2 = 1.0;
    double b3 = 1.0;
    double b4 = 1.0;
    double b_st = 1.0;

    static WeightSystem from(const Weights& w) { return {w.b1, w.b2, w.b3, w.b4, w.b_st()}; }

    /// Strict weight-triangle inequalities at both nodes.
    bool feasible() const;
    /// Throws SolverError(InfeasibleWeights) naming the failing node.
    void require_feasible() const;
};

/// Angles at the two nodes, radians.
///   alpha12 = angle A1-O12-A2,  alpha1 = angle A2-O12-O34,  alpha2 = angle A1-O12-O34
///   alpha34 = angle A3-O34-A4,  alpha3 = angle A4-O34-O12,  alpha4 = angle A3-O34-O12
struct NodeAngles {
    double alpha12 = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double alpha34 = 0.0;
    double alpha3 = 0.0;
    double alpha4 = 0.0;
};

/// Auxiliary triangle erected on an edge opposite the node: altitude r and the
/// t-coordinate of its foot. The Simpson line passes through its apex.
struct MelzakTriangle {
    double r = 0.0;
    double h_prime = 0.0;
    /// Angles at (apex, far vertex, near vertex).
    std::array<double, 3> third_vertex_angles{};
};

/// Circumradius quantities of the weight triangle scaled so its B_ST side equals the edge.
struct ConeQuantities {
    double R = 0.0;
    double beta = 0.0;                 // arccos(a / 2R)
    double cone_half_angle_cos = 0.0;  // cos(alpha_ij)
    double cone_half_angle = 0.0;      // pi - alpha_ij, half-angle of the excluded cone at a vertex
    double ratio_threshold = 0.0;      // tan(cone_half_angle); +inf when the half-angle is >= 90 deg

    double torus_offset() const;       // R sin(beta)
};

/// Angle at a node between the forces `adj1` and `adj2`, balanced by a third force `opposite`.
/// Throws InfeasibleWeights when the three magnitudes do not form a strict triangle.
double equilibrium_angle(double opposite, double adj1, double adj2);

NodeAngles node_angles(const WeightSystem& w);

/// `near_weight` belongs to the vertex at t = k (A1 or A4), `far_weight` to the other end.
MelzakTriangle melzak_quantities(double a, double k, double far_weight, double near_weight, double b_st);

ConeQuantities cone_quantities(double a, double bi, double bj, double b_st);

}  // namespace wsteiner
