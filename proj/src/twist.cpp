#include "wsteiner/twist.hpp"

#include <algorithm>
#include <cmath>

#include "wsteiner/errors.hpp"

namespace wsteiner {

std::string_view to_string(TwistCase c) {
    switch (c) {
        case TwistCase::general: return "general";
        case TwistCase::phi_zero: return "phi_zero";
        case TwistCase::phi_right: return "phi_right";
        case TwistCase::both_right: return "both_right";
    }
    return "general";
}

namespace {
constexpr double kCaseTol = 1e-12;
constexpr double kPlaneTol = 1e-12;
}  // namespace

TwistReport twist_from_intercepts(double H, double phi, double t12, double t34) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    const double len2 = H * H + t12 * t12 + t34 * t34 - 2.0 * t12 * t34 * c;
    const double len = std::sqrt(std::max(0.0, len2));
    const double ref = std::max({std::abs(t12), std::abs(t34), H});
    if (!(len > 1e-12 * ref) || !(ref > 0.0)) {
        throw SolverError(ErrorCode::UndefinedTwist, "T12 and T34 coincide");
    }
    const double cos12 = (t12 - t34 * c) / len;
    const double cos34 = (t34 - t12 * c) / len;
    const double sin12 = std::sqrt(H * H + t34 * t34 * s * s) / len;
    const double sin34 = std::sqrt(H * H + t12 * t12 * s * s) / len;
    if (!(sin12 * sin34 > kPlaneTol)) {
        throw SolverError(ErrorCode::UndefinedTwist, "a Steiner plane degenerates (Simpson line along an edge)");
    }

    TwistReport r;
    r.simpson_length = len;
    r.phi12 = std::atan2(sin12, cos12);
    r.phi34 = std::atan2(sin34, cos34);
    if (std::abs(cos12) < kCaseTol && std::abs(cos34) < kCaseTol) {
        r.special_case = TwistCase::both_right;
        r.omega = phi;
    } else if (phi < kCaseTol) {
        r.special_case = TwistCase::phi_zero;
        r.omega = 0.0;
    } else {
        // |n1 x n2| = |(u12 x u43) . e| = H sin(phi) / L, so both components share the
        // positive factor 1 / (sin phi12 sin phi34).
        if (std::abs(c) < kCaseTol) r.special_case = TwistCase::phi_right;
        r.omega = std::atan2(H * s / len, c + cos12 * cos34);
    }
    r.signed_omega = r.omega;
    return r;
}

TwistReport twist_angle(const SkewFrame& frame, double t12, double t34) {
    if (frame.intersecting) {
        throw SolverError(ErrorCode::UndefinedTwist, "paired edges lie on intersecting lines");
    }
    TwistReport r = twist_from_intercepts(frame.H, frame.phi, t12, t34);
    const Vec3 along = normalized(frame.point34(t34) - frame.point12(t12));
    const Vec3 n1 = cross(frame.u12, along);
    const Vec3 n2 = cross(frame.u34, along);
    if (dot(cross(n1, n2), along) < 0.0) r.signed_omega = -r.omega;
    return r;
}

double twist_angle_normal_oracle(const TetInstance& tet, const Point3& t12_point, const Point3& t34_point) {
    const Vec3 u12 = normalized(tet.a2() - tet.a1());
    const Vec3 u43 = normalized(tet.a3() - tet.a4());
    const Vec3 along = normalized(t34_point - t12_point);
    const Vec3 n1 = cross(u12, along);
    const Vec3 n2 = cross(u43, along);
    if (!(norm(n1) > kPlaneTol) || !(norm(n2) > kPlaneTol)) {
        throw SolverError(ErrorCode::UndefinedTwist, "a Steiner plane degenerates");
    }
    return angle_between(n1, n2);
}

}  // namespace wsteiner
