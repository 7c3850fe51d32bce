#pragma once

#include <string_view>

#include "wsteiner/geometry.hpp"

namespace wsteiner {

enum class TwistCase { general, phi_zero, phi_right, both_right };

std::string_view to_string(TwistCase c);

/// Dihedral angle between the Steiner planes A1A2T12T34 and A4A3T34T12.
struct TwistReport {
    double phi12 = 0.0;  // angle A1-T12-T34
    double phi34 = 0.0;  // angle A4-T34-T12
    double omega = 0.0;  // unsigned, [0, pi]
    double signed_omega = 0.0;  // sign from the orientation of the two normals about T12->T34
    double simpson_length = 0.0;
    TwistCase special_case = TwistCase::general;
};

/// Twist from the scalar frame data alone:
///   cos(omega) = (cos phi + cos phi12 cos phi34) / (sin phi12 sin phi34)
/// with cos phi12 = (t12 - t34 cos phi)/L, cos phi34 = (t34 - t12 cos phi)/L,
/// L = sqrt(H^2 + t12^2 + t34^2 - 2 t12 t34 cos phi). `signed_omega` equals `omega` here.
TwistReport twist_from_intercepts(double H, double phi, double t12, double t34);

TwistReport twist_angle(const SkewFrame& frame, double t12, double t34);

/// Same dihedral from cross-product normals (A1->A2) x u and (A4->A3) x u, u = unit T12->T34.
double twist_angle_normal_oracle(const TetInstance& tet, const Point3& t12_point, const Point3& t34_point);

}  // namespace wsteiner
