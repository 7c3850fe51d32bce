#include "wsteiner/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wsteiner/errors.hpp"
#include "wsteiner/oracle.hpp"

namespace wsteiner {

double SimpsonMaps::S(double t) const { return std::sqrt(H * H + t * t * sin_phi * sin_phi); }

double SimpsonMaps::f34(double t12) const {
    const double s = S(t12);
    return (edge34.h_prime * s + edge34.r * t12 * cos_phi) / (edge34.r + s);
}

double SimpsonMaps::f12(double t34) const {
    const double s = S(t34);
    return (edge12.h_prime * s + edge12.r * t34 * cos_phi) / (edge12.r + s);
}

double SimpsonMaps::residual34(double t12, double t34) const {
    return (t34 - t12 * cos_phi) / S(t12) - (edge34.h_prime - t34) / edge34.r;
}

double SimpsonMaps::residual12(double t12, double t34) const {
    return (t12 - t34 * cos_phi) / S(t34) - (edge12.h_prime - t12) / edge12.r;
}

SimpsonMaps fixed_point_maps(const SkewFrame& frame, const WeightSystem& w) {
    w.require_feasible();
    SimpsonMaps m;
    m.H = frame.H;
    m.cos_phi = frame.cos_phi();
    m.sin_phi = frame.sin_phi();
    // Near vertex is A1 (t = k1) on edge 12 and A4 (t = k2) on edge 34.
    m.edge12 = melzak_quantities(frame.a12, frame.k1, w.b2, w.b1, w.b_st);
    m.edge34 = melzak_quantities(frame.a34, frame.k2, w.b3, w.b4, w.b_st);
    return m;
}

SimpsonSolution solve_simpson(const SkewFrame& frame, const WeightSystem& w, const SimpsonOptions& opts) {
    const SimpsonMaps maps = fixed_point_maps(frame, w);
    const double step_tol = opts.tol * frame.scale();

    SimpsonSolution sol;
    double t12 = opts.start == StartRule::midpoint ? frame.m12 : frame.k1;
    double t34 = std::numeric_limits<double>::infinity();
    bool converged = false;
    int n = 0;
    while (n < opts.max_iter) {
        ++n;
        const double next34 = maps.f34(t12);
        const double next12 = maps.f12(next34);
        if (!std::isfinite(next12) || !std::isfinite(next34)) {
            throw SolverError(ErrorCode::DegenerateConfiguration, "Simpson iteration produced a non-finite intercept");
        }
        const double delta = std::max(std::abs(next12 - t12), std::abs(next34 - t34));
        t12 = next12;
        t34 = next34;
        if (opts.record_trace) sol.trace.emplace_back(t12, t34);
        if (delta < step_tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NoConvergenceError("Simpson fixed-point iteration did not converge in " + std::to_string(n) +
                                     " iterations",
                                 n, std::move(sol.trace));
    }
    sol.t12 = t12;
    sol.t34 = maps.f34(t12);
    sol.iterations = n;
    sol.T12 = frame.point12(sol.t12);
    sol.T34 = frame.point34(sol.t34);
    sol.residuals = {maps.residual34(sol.t12, sol.t34), maps.residual12(sol.t12, sol.t34)};
    return sol;
}

double tree_cost(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34) {
    return w.b1 * distance(tet.a1(), o12) + w.b2 * distance(tet.a2(), o12) + w.b3 * distance(tet.a3(), o34) +
           w.b4 * distance(tet.a4(), o34) + w.b_st * distance(o12, o34);
}

SimpsonSolution recover_nodes(const TetInstance& tet, const SkewFrame& frame, const WeightSystem& w,
                              SimpsonSolution sol) {
    const std::array<Point3, 3> p12{tet.a1(), tet.a2(), sol.T34};
    const std::array<double, 3> w12{w.b1, w.b2, w.b_st};
    const std::array<Point3, 3> p34{tet.a3(), tet.a4(), sol.T12};
    const std::array<double, 3> w34{w.b3, w.b4, w.b_st};
    const MedianResult m12 = weighted_median(p12, w12);
    const MedianResult m34 = weighted_median(p34, w34);
    if (m12.terminal || m34.terminal) {
        throw SolverError(ErrorCode::NodeOffSegment, "a recovered node coincides with a terminal");
    }

    const double scale = frame.scale();
    const Vec3 line = sol.T34 - sol.T12;
    const double len2 = norm2(line);
    if (!(len2 > 0.0)) throw SolverError(ErrorCode::NodeOffSegment, "Simpson segment T12T34 has zero length");
    auto param = [&](const Point3& p) { return dot(p - sol.T12, line) / len2; };
    auto off_line = [&](const Point3& p) { return norm(cross(p - sol.T12, line)) / std::sqrt(len2); };

    const double s12 = param(m12.point);
    const double s34 = param(m34.point);
    const double slack = 1e-9 * scale / std::sqrt(len2);
    if (off_line(m12.point) > 1e-9 * scale || off_line(m34.point) > 1e-9 * scale) {
        throw SolverError(ErrorCode::NodeOffSegment, "recovered nodes are not on the Simpson line");
    }
    if (s12 < -slack || s34 > 1.0 + slack || !(s12 < s34)) {
        throw SolverError(ErrorCode::NodeOffSegment,
                          "recovered nodes are out of order on [T12, T34] (s12=" + std::to_string(s12) +
                              ", s34=" + std::to_string(s34) + ")");
    }
    sol.O12 = m12.point;
    sol.O34 = m34.point;
    sol.nodes_recovered = true;
    sol.cost = tree_cost(tet, w, sol.O12, sol.O34);
    return sol;
}

SteinerTree build_tree(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34) {
    auto edge = [](std::string from, std::string to, const Point3& p, const Point3& q, double weight) {
        return TreeEdge{std::move(from), std::move(to), p, q, weight, distance(p, q)};
    };
    SteinerTree tree{{edge("A1", "O12", tet.a1(), o12, w.b1), edge("A2", "O12", tet.a2(), o12, w.b2),
                      edge("A3", "O34", tet.a3(), o34, w.b3), edge("A4", "O34", tet.a4(), o34, w.b4),
                      edge("O12", "O34", o12, o34, w.b_st)},
                     0.0};
    for (const auto& e : tree.edges) tree.cost += e.weight * e.length;
    return tree;
}

Stationarity node_stationarity(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34) {
    const Vec3 a1 = normalized(o12 - tet.a1());
    const Vec3 a2 = normalized(o12 - tet.a2());
    const Vec3 a3 = normalized(o34 - tet.a3());
    const Vec3 a4 = normalized(o34 - tet.a4());
    const Vec3 l = normalized(o34 - o12);
    Stationarity s;
    s.node12 = norm(w.b1 * a1 + w.b2 * a2 - w.b_st * l);
    s.node34 = norm(w.b3 * a3 + w.b4 * a4 + w.b_st * l);
    s.total = norm(w.b1 * a1 + w.b2 * a2 + w.b3 * a3 + w.b4 * a4);
    return s;
}

SteinerRun construct_steiner_tree(const TetInstance& canonical, const SimpsonOptions& opts) {
    SteinerRun run;
    run.weights = WeightSystem::from(canonical.weights);
    run.weights.require_feasible();
    run.frame = skew_frame(canonical);
    run.solution = solve_simpson(run.frame, run.weights, opts);
    run.solution = recover_nodes(canonical, run.frame, run.weights, std::move(run.solution));
    return run;
}

}  // namespace wsteiner
