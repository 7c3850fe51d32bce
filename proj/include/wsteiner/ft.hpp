#pragma once

#include <array>

#include "wsteiner/geometry.hpp"

namespace wsteiner {

struct FtOptions {
    double tol = 1e-12;  // relative to frame.scale() for intercepts, absolute (rad) for gamma
    int max_iter = 10000;
};

/// Unweighted single Fermat-Torricelli point of the tetrahedron, located through the line
/// T12T34 that bisects both angle A1-F-A2 and angle A4-F-A3.
struct FtSolution {
    double t12 = 0.0;
    double t34 = 0.0;
    double gamma = 0.0;  // angle A4-F-A3 (= angle A1-F-A2)
    Point3 T12{};
    Point3 T34{};
    Point3 F{};
    bool f_recovered = false;
    double t12_to_f = 0.0;  // |T12 F|
    double t34_to_f = 0.0;  // |T34 F|
    double cost = 0.0;      // sum |A_i F|
    int iterations = 0;
    bool abs_variant = false;  // absolute-value equations (feet not both behind the near vertices)
    std::array<double, 3> residuals{};
};

/// Gauss-Seidel sweep: t34 from the edge-34 equation, t12 from the edge-12 equation, then
/// gamma from the closing relation T12T34 = T12F + FT34. Starts at t12 = m12, gamma = arccos(-1/3).
FtSolution solve_ft_system(const SkewFrame& frame, const FtOptions& opts = {});

/// Residuals of the three equations at (t12, t34, gamma).
std::array<double, 3> ft_residuals(const SkewFrame& frame, double t12, double t34, double gamma, bool abs_variant);

/// Places F on [T12, T34] at distance |T12 F| from T12 and checks |T12F| + |FT34| = |T12T34|.
FtSolution recover_F(const SkewFrame& frame, FtSolution sol);

}  // namespace wsteiner
