#include "wsteiner/ft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wsteiner/errors.hpp"

namespace wsteiner {

namespace {

struct FtTerms {
    double c;
    double s;
    double H;

    double S(double t) const { return std::sqrt(H * H + t * t * s * s); }
};

// Root of (t - x c)/S = (m - t)/R lying between m and x c.
double intercept(double m, double other, double S, double R, double c) {
    return (m * S + R * other * c) / (R + S);
}

double cot_half_gamma(const SkewFrame& f, const FtTerms& k, double t12, double t34, bool abs_variant) {
    const double num = f.H * f.H + f.k1 * (t12 - t34 * k.c) + f.k2 * (t34 - t12 * k.c);
    double d12 = t12 - f.k1;
    double d34 = t34 - f.k2;
    if (abs_variant) {
        d12 = std::abs(d12);
        d34 = std::abs(d34);
    }
    const double den = d12 * k.S(t34) + d34 * k.S(t12);
    if (!(std::abs(den) > 1e-300)) {
        throw SolverError(ErrorCode::DegenerateConfiguration, "closing relation has a vanishing denominator");
    }
    return num / den;
}

}  // namespace

std::array<double, 3> ft_residuals(const SkewFrame& frame, double t12, double t34, double gamma, bool abs_variant) {
    const FtTerms k{frame.cos_phi(), frame.sin_phi(), frame.H};
    const double th = std::tan(0.5 * gamma);
    const double R34 = 0.5 * frame.a34 * th;
    const double R12 = 0.5 * frame.a12 * th;
    double l34 = (t34 - t12 * k.c) / k.S(t12);
    double r34 = (frame.m34 - t34) / R34;
    double l12 = (t12 - t34 * k.c) / k.S(t34);
    double r12 = (frame.m12 - t12) / R12;
    if (abs_variant) {
        l34 = std::abs(l34);
        r34 = std::abs(r34);
        l12 = std::abs(l12);
        r12 = std::abs(r12);
    }
    return {l34 - r34, l12 - r12, 1.0 / th - cot_half_gamma(frame, k, t12, t34, abs_variant)};
}

FtSolution solve_ft_system(const SkewFrame& frame, const FtOptions& opts) {
    const FtTerms k{frame.cos_phi(), frame.sin_phi(), frame.H};
    const bool abs_variant = frame.config != FrameConfig::both_feet_outside_behind;
    const double step_tol = opts.tol * frame.scale();

    double t12 = frame.m12;
    double t34 = std::numeric_limits<double>::infinity();
    double gamma = std::acos(-1.0 / 3.0);
    double damping = 1.0;
    double last_dgamma = 0.0;
    bool converged = false;
    int n = 0;
    while (n < opts.max_iter) {
        ++n;
        const double th = std::tan(0.5 * gamma);
        const double n34 = intercept(frame.m34, t12, k.S(t12), 0.5 * frame.a34 * th, k.c);
        const double n12 = intercept(frame.m12, n34, k.S(n34), 0.5 * frame.a12 * th, k.c);
        const double cot = cot_half_gamma(frame, k, n12, n34, abs_variant);
        const double target = 2.0 * std::atan2(1.0, cot);
        double dgamma = target - gamma;
        // Oscillating gamma updates switch on half-step damping for the rest of the run.
        if (damping == 1.0 && n > 2 && dgamma * last_dgamma < 0.0 && std::abs(dgamma) >= std::abs(last_dgamma)) {
            damping = 0.5;
        }
        dgamma *= damping;
        const double delta = std::max(std::abs(n12 - t12), std::abs(n34 - t34));
        t12 = n12;
        t34 = n34;
        gamma += dgamma;
        last_dgamma = dgamma;
        if (!std::isfinite(t12) || !std::isfinite(t34) || !std::isfinite(gamma)) {
            throw SolverError(ErrorCode::DegenerateConfiguration, "FT iteration produced a non-finite value");
        }
        if (delta < step_tol && std::abs(dgamma) < opts.tol) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw NoConvergenceError("FT system did not converge in " + std::to_string(n) + " iterations", n);
    }

    FtSolution sol;
    sol.t12 = t12;
    sol.t34 = t34;
    sol.gamma = gamma;
    sol.iterations = n;
    sol.abs_variant = abs_variant;
    sol.T12 = frame.point12(t12);
    sol.T34 = frame.point34(t34);
    sol.residuals = ft_residuals(frame, t12, t34, gamma, abs_variant);
    return sol;
}

FtSolution recover_F(const SkewFrame& frame, FtSolution sol) {
    const double c = frame.cos_phi();
    const double s = frame.sin_phi();
    const double H = frame.H;
    const double len = std::sqrt(std::max(0.0, H * H + sol.t12 * sol.t12 + sol.t34 * sol.t34 - 2.0 * sol.t12 * sol.t34 * c));
    if (!(len > 0.0)) throw SolverError(ErrorCode::InconsistentSolution, "T12 and T34 coincide");
    const double sin12 = std::sqrt(H * H + sol.t34 * sol.t34 * s * s) / len;
    const double cos12 = (sol.t12 - sol.t34 * c) / len;
    const double sin34 = std::sqrt(H * H + sol.t12 * sol.t12 * s * s) / len;
    const double cos34 = (sol.t34 - sol.t12 * c) / len;
    const double cot = 1.0 / std::tan(0.5 * sol.gamma);
    double d12 = sol.t12 - frame.k1;
    double d34 = sol.t34 - frame.k2;
    if (sol.abs_variant) {
        d12 = std::abs(d12);
        d34 = std::abs(d34);
    }
    sol.t12_to_f = d12 * (sin12 * cot + cos12);
    sol.t34_to_f = d34 * (sin34 * cot + cos34);
    if (std::abs(sol.t12_to_f + sol.t34_to_f - len) > 1e-9 * frame.scale() || sol.t12_to_f < 0.0 ||
        sol.t34_to_f < 0.0) {
        throw SolverError(ErrorCode::InconsistentSolution,
                          "T12F + FT34 does not match T12T34 (F not between the intercepts)");
    }
    sol.F = sol.T12 + (sol.t12_to_f / len) * (sol.T34 - sol.T12);
    sol.f_recovered = true;

    const Point3 a1 = frame.point12(frame.k1);
    const Point3 a2 = frame.point12(frame.k1 + frame.a12);
    const Point3 a4 = frame.point34(frame.k2);
    const Point3 a3 = frame.point34(frame.k2 + frame.a34);
    sol.cost = distance(a1, sol.F) + distance(a2, sol.F) + distance(a3, sol.F) + distance(a4, sol.F);
    return sol;
}

}  // namespace wsteiner
