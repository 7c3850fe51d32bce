#include "wsteiner/degeneracy.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "wsteiner/errors.hpp"
#include "wsteiner/oracle.hpp"

namespace wsteiner {

double EdgeCoords::radial() const { return std::hypot(y, z); }

EdgeCoords edge_frame_coords(const TetInstance& tet, PairedEdge edge, const Point3& c) {
    const Point3& near = edge == PairedEdge::A1A2 ? tet.a1() : tet.a4();
    const Point3& far = edge == PairedEdge::A1A2 ? tet.a2() : tet.a3();
    const Vec3 d = far - near;
    const double a = norm(d);
    if (!(a > 0.0)) throw SolverError(ErrorCode::DegenerateEdge, "edge has zero length");
    const Vec3 ex = d / a;
    // Seed axis: the coordinate axis least aligned with the edge.
    Vec3 seed{1, 0, 0};
    if (std::abs(ex.y) <= std::abs(ex.x) && std::abs(ex.y) <= std::abs(ex.z)) {
        seed = {0, 1, 0};
    } else if (std::abs(ex.z) <= std::abs(ex.x)) {
        seed = {0, 0, 1};
    }
    const Vec3 ey = normalized(cross(ex, seed));
    const Vec3 ez = cross(ex, ey);
    const Vec3 r = c - near;
    return {dot(r, ex), dot(r, ey), dot(r, ez), 0.0, a};
}

namespace {

struct EdgeSpec {
    PairedEdge edge;
    const char* cone_label;
    const char* torus_label;
    double bi;
    double bj;
    std::array<int, 2> queries;
};

void edge_records(const TetInstance& tet, const WeightSystem& w, const EdgeSpec& spec,
                  std::vector<DegeneracyRecord>& out) {
    const double a = spec.edge == PairedEdge::A1A2 ? distance(tet.a1(), tet.a2()) : distance(tet.a4(), tet.a3());
    const ConeQuantities q = cone_quantities(a, spec.bi, spec.bj, w.b_st);
    for (int idx : spec.queries) {
        const Point3& c = tet.vertices[idx];
        const std::string name = "A" + std::to_string(idx + 1);
        const EdgeCoords ec = edge_frame_coords(tet, spec.edge, c);
        const double rho = ec.radial();

        DegeneracyRecord cone{spec.cone_label, name, c};
        double axial = 0.0;
        if (ec.x < ec.x_near) {
            axial = ec.x_near - ec.x;
        } else if (ec.x > ec.x_far) {
            axial = ec.x - ec.x_far;
        } else {
            cone.applicable = false;
        }
        if (cone.applicable) {
            cone.lhs = rho / axial;
            cone.rhs = q.ratio_threshold;
            cone.satisfied = std::atan2(rho, axial) > q.cone_half_angle;
        } else {
            cone.satisfied = true;
        }
        out.push_back(cone);

        DegeneracyRecord torus{spec.torus_label, name, c};
        const double lift = rho + q.torus_offset();
        const double along = 0.5 * (ec.x_near + ec.x_far) - ec.x;
        torus.lhs = lift * lift + along * along;
        torus.rhs = q.R * q.R;
        torus.satisfied = torus.lhs > torus.rhs;
        out.push_back(torus);
    }
}

DegeneracyRecord split_record(const TetInstance& tet, const WeightSystem& w, double tiny) {
    const std::array<double, 4> wt{w.b1, w.b2, w.b3, w.b4};
    const MedianResult m = weighted_median(tet.vertices, wt);
    DegeneracyRecord rec{"split", "X", m.point};
    rec.rhs = w.b_st;
    for (const auto& v : tet.vertices) {
        if (distance(v, m.point) <= tiny) return rec;  // collapses onto a terminal
    }
    const Vec3 pull = w.b1 * normalized(tet.a1() - m.point) + w.b2 * normalized(tet.a2() - m.point);
    rec.lhs = norm(pull);
    rec.satisfied = rec.lhs > rec.rhs;
    return rec;
}

// Node sitting on terminal `at` (its pair partner `other`); the opposite node solves its
// own three-point problem with this terminal standing in for the node.
DegeneracyRecord absorb_record(const TetInstance& tet, const WeightSystem& w, int at, double tiny) {
    const bool first_pair = at < 2;
    const int other = first_pair ? 1 - at : 5 - at;
    const std::array<double, 4> wt{w.b1, w.b2, w.b3, w.b4};
    const Point3& terminal = tet.vertices[at];

    const std::array<Point3, 3> opp_pts = first_pair ? std::array<Point3, 3>{tet.a3(), tet.a4(), terminal}
                                                     : std::array<Point3, 3>{tet.a1(), tet.a2(), terminal};
    const std::array<double, 3> opp_w = first_pair ? std::array<double, 3>{w.b3, w.b4, w.b_st}
                                                   : std::array<double, 3>{w.b1, w.b2, w.b_st};
    const Point3 opposite = weighted_median(opp_pts, opp_w).point;

    DegeneracyRecord rec{"absorb_" + std::to_string(at + 1), "A" + std::to_string(at + 1), terminal};
    rec.rhs = wt[at];
    if (distance(opposite, terminal) <= tiny) return rec;
    const Vec3 pull = wt[other] * normalized(tet.vertices[other] - terminal) + w.b_st * normalized(opposite - terminal);
    rec.lhs = norm(pull);
    rec.satisfied = rec.lhs > rec.rhs;
    return rec;
}

bool close_rel(double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); }

}  // namespace

DegeneracyReport check_nondegenerate(const TetInstance& tet, const WeightSystem& w) {
    w.require_feasible();
    DegeneracyReport report;
    edge_records(tet, w, {PairedEdge::A1A2, "cone_12", "torus_12", w.b1, w.b2, {2, 3}}, report.records);
    edge_records(tet, w, {PairedEdge::A4A3, "cone_34", "torus_34", w.b3, w.b4, {0, 1}}, report.records);

    report.cone_torus_overall = true;
    for (const auto& r : report.records) report.cone_torus_overall = report.cone_torus_overall && r.satisfied;

    double scale = 0.0;
    for (const auto& p : tet.vertices) {
        for (const auto& q : tet.vertices) scale = std::max(scale, distance(p, q));
    }
    const double tiny = 1e-9 * scale;
    report.records.push_back(split_record(tet, w, tiny));
    for (int i = 0; i < 4; ++i) report.records.push_back(absorb_record(tet, w, i, tiny));

    report.overall = true;
    for (const auto& r : report.records) report.overall = report.overall && r.satisfied;

    if (w.b1 == w.b2 && w.b2 == w.b3 && w.b3 == w.b4 && w.b4 == w.b_st) {
        bool ok = true;
        for (double a : {distance(tet.a1(), tet.a2()), distance(tet.a4(), tet.a3())}) {
            const ConeQuantities q = cone_quantities(a, w.b1, w.b2, w.b_st);
            const double r = std::numbers::sqrt3 / 2.0 * a;
            ok = ok && close_rel(q.ratio_threshold, std::numbers::sqrt3) && close_rel(q.torus_offset(), r / 3.0) &&
                 close_rel(q.R, 2.0 * r / 3.0);
        }
        report.equal_weight_crosscheck = ok;
    }
    return report;
}

}  // namespace wsteiner
