#include "wsteiner/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wsteiner/errors.hpp"

namespace wsteiner {

namespace {

bool strict_triangle(double a, double b, double c) {
    return std::abs(a - b) < c && c < a + b;
}

}  // namespace

bool WeightSystem::feasible() const {
    return strict_triangle(b1, b2, b_st) && strict_triangle(b3, b4, b_st);
}

void WeightSystem::require_feasible() const {
    if (!strict_triangle(b1, b2, b_st)) {
        throw SolverError(ErrorCode::InfeasibleWeights,
                          "weight-triangle inequality |B1-B2| < B_ST < B1+B2 fails at node O12");
    }
    if (!strict_triangle(b3, b4, b_st)) {
        throw SolverError(ErrorCode::InfeasibleWeights,
                          "weight-triangle inequality |B3-B4| < B_ST < B3+B4 fails at node O34");
    }
}

double ConeQuantities::torus_offset() const { return R * std::sin(beta); }

double equilibrium_angle(double opposite, double adj1, double adj2) {
    if (!(adj1 > 0.0 && adj2 > 0.0 && opposite > 0.0)) {
        throw SolverError(ErrorCode::InfeasibleWeights, "weights must be positive");
    }
    const double c = (opposite * opposite - adj1 * adj1 - adj2 * adj2) / (2.0 * adj1 * adj2);
    if (!(c > -1.0 && c < 1.0)) {
        throw SolverError(ErrorCode::InfeasibleWeights,
                          "equilibrium angle undefined (cosine " + std::to_string(c) + "); node absorbed");
    }
    return std::acos(c);
}

NodeAngles node_angles(const WeightSystem& w) {
    NodeAngles a;
    a.alpha12 = equilibrium_angle(w.b_st, w.b1, w.b2);
    a.alpha1 = equilibrium_angle(w.b1, w.b2, w.b_st);
    a.alpha2 = equilibrium_angle(w.b2, w.b1, w.b_st);
    a.alpha34 = equilibrium_angle(w.b_st, w.b3, w.b4);
    a.alpha3 = equilibrium_angle(w.b3, w.b4, w.b_st);
    a.alpha4 = equilibrium_angle(w.b4, w.b3, w.b_st);
    return a;
}

MelzakTriangle melzak_quantities(double a, double k, double far_weight, double near_weight, double b_st) {
    if (!(a > 0.0)) throw SolverError(ErrorCode::DegenerateEdge, "edge length must be positive");
    constexpr double pi = std::numbers::pi;
    const double alpha_far = equilibrium_angle(far_weight, near_weight, b_st);
    const double alpha_near = equilibrium_angle(near_weight, far_weight, b_st);
    const double alpha_node = equilibrium_angle(b_st, far_weight, near_weight);

    MelzakTriangle m;
    m.r = near_weight / b_st * a * std::sin(alpha_far);
    // cot(pi - alpha_near)
    m.h_prime = k - m.r * std::cos(alpha_near) / std::sin(alpha_near);
    m.third_vertex_angles = {pi - alpha_node, pi - alpha_far, pi - alpha_near};
    return m;
}

ConeQuantities cone_quantities(double a, double bi, double bj, double b_st) {
    if (!(a > 0.0)) throw SolverError(ErrorCode::DegenerateEdge, "edge length must be positive");
    const double heron = (bi + bj + b_st) * (bi + bj - b_st) * (bj + b_st - bi) * (bi + b_st - bj);
    const double f1 = bi + bj - b_st;
    const double f2 = bj + b_st - bi;
    const double f3 = bi + b_st - bj;
    if (!(f1 > 0.0 && f2 > 0.0 && f3 > 0.0)) {
        throw SolverError(ErrorCode::InfeasibleWeights, "weight triangle is degenerate (Heron factor <= 0)");
    }
    ConeQuantities q;
    q.R = a * bi * bj / std::sqrt(heron);
    q.beta = std::acos(std::min(1.0, a / (2.0 * q.R)));
    q.cone_half_angle_cos = (b_st * b_st - bi * bi - bj * bj) / (2.0 * bi * bj);
    q.cone_half_angle = std::numbers::pi - std::acos(q.cone_half_angle_cos);
    q.ratio_threshold = q.cone_half_angle >= std::numbers::pi / 2
                            ? std::numeric_limits<double>::infinity()
                            : std::tan(q.cone_half_angle);
    return q;
}

}  // namespace wsteiner
