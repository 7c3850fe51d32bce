#include "wsteiner/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "wsteiner/errors.hpp"

namespace wsteiner {

std::string_view to_string(Pairing p) {
    switch (p) {
        case Pairing::P12_34: return "12-34";
        case Pairing::P13_24: return "13-24";
        case Pairing::P14_23: return "14-23";
    }
    return "12-34";
}

Pairing parse_pairing(std::string_view text) {
    if (text == "12-34") return Pairing::P12_34;
    if (text == "13-24") return Pairing::P13_24;
    if (text == "14-23") return Pairing::P14_23;
    throw SolverError(ErrorCode::InvalidInput,
                      "unknown pairing '" + std::string(text) + "' (expected 12-34, 13-24 or 14-23)");
}

std::string_view to_string(FrameConfig c) {
    switch (c) {
        case FrameConfig::both_feet_outside_behind: return "both_feet_outside_behind";
        case FrameConfig::foot_inside_12: return "foot_inside_12";
        case FrameConfig::foot_inside_34: return "foot_inside_34";
        case FrameConfig::both_inside: return "both_inside";
        case FrameConfig::mixed: return "mixed";
    }
    return "mixed";
}

void TetInstance::validate() const {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (!vertices[i].finite()) {
            throw SolverError(ErrorCode::InvalidInput,
                              "vertex A" + std::to_string(i + 1) + " has a non-finite coordinate");
        }
    }
    const std::array<std::pair<const char*, double>, 6> named{{{"B1", weights.b1},
                                                                {"B2", weights.b2},
                                                                {"B3", weights.b3},
                                                                {"B4", weights.b4},
                                                                {"B12", weights.b12},
                                                                {"B34", weights.b34}}};
    for (const auto& [name, value] : named) {
        if (!std::isfinite(value) || value <= 0.0) {
            throw SolverError(ErrorCode::InvalidInput,
                              std::string("weight ") + name + " must be a positive finite number");
        }
    }
}

std::array<int, 4> TetInstance::canonical_order() const {
    switch (pairing) {
        case Pairing::P12_34: return {0, 1, 2, 3};
        case Pairing::P13_24: return {0, 2, 1, 3};
        case Pairing::P14_23: return {0, 3, 1, 2};
    }
    return {0, 1, 2, 3};
}

TetInstance TetInstance::canonical() const {
    const auto order = canonical_order();
    const std::array<double, 4> b{weights.b1, weights.b2, weights.b3, weights.b4};
    TetInstance out;
    for (int slot = 0; slot < 4; ++slot) out.vertices[slot] = vertices[order[slot]];
    out.weights = Weights{b[order[0]], b[order[1]], b[order[2]], b[order[3]], weights.b12, weights.b34};
    out.pairing = Pairing::P12_34;
    return out;
}

bool TetInstance::standing_assumption_holds() const {
    return distance(a1(), a4()) + distance(a2(), a3()) > distance(a1(), a2()) + distance(a3(), a4());
}

double SkewFrame::cos_phi() const { return std::cos(phi); }
double SkewFrame::sin_phi() const { return std::sin(phi); }
double SkewFrame::scale() const { return std::max({a12, a34, H}); }

double SkewFrame::dist_to_line34(double t12) const {
    const double s = sin_phi();
    return std::sqrt(H * H + t12 * t12 * s * s);
}

double SkewFrame::dist_to_line12(double t34) const {
    const double s = sin_phi();
    return std::sqrt(H * H + t34 * t34 * s * s);
}

namespace {

struct EdgePair {
    Vec3 d12;
    Vec3 d43;
    double a12;
    double a34;
};

EdgePair paired_edges(const TetInstance& tet) {
    EdgePair e{tet.a2() - tet.a1(), tet.a3() - tet.a4(), 0.0, 0.0};
    e.a12 = norm(e.d12);
    e.a34 = norm(e.d43);
    if (!(e.a12 > 0.0)) throw SolverError(ErrorCode::DegenerateEdge, "edge A1A2 has zero length");
    if (!(e.a34 > 0.0)) throw SolverError(ErrorCode::DegenerateEdge, "edge A4A3 has zero length");
    return e;
}

}  // namespace

double interedge_angle(const TetInstance& tet) {
    const EdgePair e = paired_edges(tet);
    return angle_between(e.d12, e.d43);
}

double common_perpendicular_length(const TetInstance& tet) {
    const EdgePair e = paired_edges(tet);
    const double sin_phi = norm(cross(e.d12, e.d43)) / (e.a12 * e.a34);
    if (sin_phi < kParallelSinTol) throw SolverError(ErrorCode::ParallelEdges, "edges A1A2 and A4A3 are parallel");
    const double det = determinant(tet.a4() - tet.a1(), e.d12, tet.a3() - tet.a4());
    return std::abs(det) / (e.a12 * e.a34 * sin_phi);
}

SkewFrame skew_frame(const TetInstance& tet) {
    const EdgePair e = paired_edges(tet);
    SkewFrame f;
    f.a12 = e.a12;
    f.a34 = e.a34;
    f.u12 = e.d12 / e.a12;
    f.u34 = e.d43 / e.a34;

    const double c = dot(f.u12, f.u34);
    const double s = norm(cross(f.u12, f.u34));
    if (s < kParallelSinTol) throw SolverError(ErrorCode::ParallelEdges, "edges A1A2 and A4A3 are parallel");
    f.phi = std::atan2(s, c);

    // Feet: (A1 + p*u12) - (A4 + q*u34) orthogonal to both directions.
    const Vec3 w0 = tet.a1() - tet.a4();
    const double du = dot(w0, f.u12);
    const double dv = dot(w0, f.u34);
    const double p = (c * dv - du) / (s * s);
    const double q = p * c + dv;
    f.foot12 = tet.a1() + p * f.u12;
    f.foot34 = tet.a4() + q * f.u34;
    f.k1 = -p;
    f.k2 = -q;
    f.m12 = f.k1 + 0.5 * f.a12;
    f.m34 = f.k2 + 0.5 * f.a34;

    const double det = determinant(tet.a4() - tet.a1(), e.d12, tet.a3() - tet.a4());
    f.H = std::abs(det) / (e.a12 * e.a34 * s);
    f.intersecting = f.H < kIntersectTol * std::max(e.a12, e.a34);

    const bool behind12 = f.k1 > 0.0;
    const bool behind34 = f.k2 > 0.0;
    const bool inside12 = f.k1 <= 0.0 && f.k1 + f.a12 >= 0.0;
    const bool inside34 = f.k2 <= 0.0 && f.k2 + f.a34 >= 0.0;
    if (behind12 && behind34) {
        f.config = FrameConfig::both_feet_outside_behind;
    } else if (inside12 && inside34) {
        f.config = FrameConfig::both_inside;
    } else if (inside12 && behind34) {
        f.config = FrameConfig::foot_inside_12;
    } else if (behind12 && inside34) {
        f.config = FrameConfig::foot_inside_34;
    } else {
        f.config = FrameConfig::mixed;
    }
    return f;
}

}  // namespace wsteiner
