#include "wsteiner/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "wsteiner/errors.hpp"

namespace wsteiner {

namespace {

double objective(std::span<const Point3> pts, std::span<const double> w, const Point3& x) {
    double f = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) f += w[i] * distance(x, pts[i]);
    return f;
}

// Gradient of the unsmoothed objective, skipping terminals that coincide with x.
Vec3 gradient(std::span<const Point3> pts, std::span<const double> w, const Point3& x) {
    Vec3 g;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec3 d = x - pts[i];
        const double n = norm(d);
        if (n > 0.0) g += (w[i] / n) * d;
    }
    return g;
}

struct Sym3 {
    double xx = 0, xy = 0, xz = 0, yy = 0, yz = 0, zz = 0;
};

bool solve_sym3(const Sym3& m, const Vec3& b, Vec3& out) {
    const double c00 = m.yy * m.zz - m.yz * m.yz;
    const double c01 = m.xz * m.yz - m.xy * m.zz;
    const double c02 = m.xy * m.yz - m.xz * m.yy;
    const double det = m.xx * c00 + m.xy * c01 + m.xz * c02;
    const double trace = m.xx + m.yy + m.zz;
    if (!(std::abs(det) > 1e-14 * trace * trace * trace)) return false;
    const double c11 = m.xx * m.zz - m.xz * m.xz;
    const double c12 = m.xy * m.xz - m.xx * m.yz;
    const double c22 = m.xx * m.yy - m.xy * m.xy;
    out = Vec3{c00 * b.x + c01 * b.y + c02 * b.z, c01 * b.x + c11 * b.y + c12 * b.z,
               c02 * b.x + c12 * b.y + c22 * b.z} /
          det;
    return true;
}

// One damped Newton step; returns false when it cannot make progress.
bool newton_step(std::span<const Point3> pts, std::span<const double> w, Point3& x, double& fx) {
    Sym3 h;
    Vec3 g;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Vec3 d = x - pts[i];
        const double n = norm(d);
        if (!(n > 0.0)) return false;
        const Vec3 e = d / n;
        const double s = w[i] / n;
        g += w[i] * e;
        h.xx += s * (1 - e.x * e.x);
        h.yy += s * (1 - e.y * e.y);
        h.zz += s * (1 - e.z * e.z);
        h.xy -= s * e.x * e.y;
        h.xz -= s * e.x * e.z;
        h.yz -= s * e.y * e.z;
    }
    Vec3 step;
    if (!solve_sym3(h, g, step)) return false;
    double t = 1.0;
    // Near the optimum the decrease is below the rounding of f; tolerate a few ulps.
    const double slack = 8 * std::numeric_limits<double>::epsilon() * fx;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
        const Point3 cand = x - t * step;
        const double fc = objective(pts, w, cand);
        if (fc <= fx + slack) {
            x = cand;
            fx = fc;
            return true;
        }
    }
    return false;
}

double bbox_diagonal(std::span<const Point3> pts) {
    Vec3 lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    return norm(hi - lo);
}

}  // namespace

MedianResult weighted_median(std::span<const Point3> points, std::span<const double> weights,
                             const MedianOptions& opts) {
    if (points.size() < 2 || points.size() != weights.size()) {
        throw SolverError(ErrorCode::InvalidInput, "weighted_median needs >= 2 points with matching weights");
    }
    for (double wi : weights) {
        if (!(wi > 0.0) || !std::isfinite(wi)) {
            throw SolverError(ErrorCode::InvalidInput, "weighted_median weights must be positive");
        }
    }
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    const double scale = bbox_diagonal(points);
    MedianResult res;
    if (scale == 0.0) {
        res.point = points[0];
        res.terminal = 0;
        return res;
    }

    // A terminal is the median iff the pull of the others does not exceed its own weight.
    for (std::size_t j = 0; j < points.size(); ++j) {
        Vec3 pull;
        double own = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Vec3 d = points[i] - points[j];
            const double n = norm(d);
            if (n > 0.0) {
                pull += (weights[i] / n) * d;
            } else {
                own += weights[i];
            }
        }
        if (norm(pull) <= own) {
            res.point = points[j];
            res.terminal = j;
            res.residual = 0.0;
            return res;
        }
    }

    Point3 x;
    for (std::size_t i = 0; i < points.size(); ++i) x += (weights[i] / wsum) * points[i];

    const double eps2 = (1e-12 * scale) * (1e-12 * scale);
    const double target = opts.tol * wsum;
    double fx = objective(points, weights, x);
    int it = 0;
    bool newton_ok = true;
    while (it < opts.max_iter) {
        ++it;
        const double gnorm = norm(gradient(points, weights, x));
        if (gnorm <= target) break;
        const Point3 before = x;
        if (newton_ok && newton_step(points, weights, x, fx)) {
            if (distance(x, before) <= 1e-16 * scale) break;
            continue;
        }
        // Weiszfeld fallback; Newton gets another chance once the iterate has moved.
        Vec3 num;
        double den = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double s = weights[i] / std::sqrt(norm2(x - points[i]) + eps2);
            num += s * points[i];
            den += s;
        }
        const Point3 next = num / den;
        const double moved = distance(next, x);
        x = next;
        fx = objective(points, weights, x);
        newton_ok = moved < 1e-3 * scale;
        if (moved <= 1e-17 * scale) break;
    }
    res.point = x;
    res.iterations = it;
    res.residual = norm(gradient(points, weights, x));
    // Rounding floor of the gradient sum.
    if (opts.strict && res.residual > std::max(target, 64 * std::numeric_limits<double>::epsilon() * wsum)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "weighted_median did not reach tolerance (relative residual %.3g)",
                      res.residual / wsum);
        throw NoConvergenceError(buf,
                                 it);
    }
    return res;
}

double two_node_cost(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34) {
    return w.b1 * distance(tet.a1(), o12) + w.b2 * distance(tet.a2(), o12) + w.b3 * distance(tet.a3(), o34) +
           w.b4 * distance(tet.a4(), o34) + w.b_st * distance(o12, o34);
}

namespace {

// Gradient of w*|x - p| and the subgradient ball radius when x == p.
void accumulate_term(const Point3& x, const Point3& p, double weight, double tiny, Vec3& g, double& ball) {
    const Vec3 d = x - p;
    const double n = norm(d);
    if (n > tiny) {
        g += (weight / n) * d;
    } else {
        ball += weight;
    }
}

Vec3 shrink(const Vec3& g, double ball) {
    const double n = norm(g);
    if (n <= ball) return {};
    return g * ((n - ball) / n);
}

}  // namespace

double two_node_residual(const TetInstance& tet, const WeightSystem& w, const Point3& o12, const Point3& o34) {
    const double tiny = 1e-14 * bbox_diagonal(tet.vertices);
    Vec3 g12, g34;
    double ball12 = 0.0, ball34 = 0.0;
    accumulate_term(o12, tet.a1(), w.b1, tiny, g12, ball12);
    accumulate_term(o12, tet.a2(), w.b2, tiny, g12, ball12);
    accumulate_term(o34, tet.a3(), w.b3, tiny, g34, ball34);
    accumulate_term(o34, tet.a4(), w.b4, tiny, g34, ball34);
    const Vec3 l = o12 - o34;
    const double ln = norm(l);
    if (ln > tiny) {
        g12 += (w.b_st / ln) * l;
        g34 -= (w.b_st / ln) * l;
        return std::sqrt(norm2(shrink(g12, ball12)) + norm2(shrink(g34, ball34)));
    }
    // Coupled subgradient (B_ST s, -B_ST s), |s| <= 1: pick s minimizing the combined norm.
    Vec3 s = (g34 - g12) / (2.0 * w.b_st);
    if (norm(s) > 1.0) s = normalized(s);
    return std::sqrt(norm2(shrink(g12 + w.b_st * s, ball12)) + norm2(shrink(g34 - w.b_st * s, ball34)));
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct RestartOutcome {
    Point3 o12, o34;
    double cost = 0.0;
    int sweeps = 0;
    std::vector<double> trace;
};

// Gaussian elimination with partial pivoting on a 6x6 system.
bool solve6(std::array<std::array<double, 7>, 6> m, std::array<double, 6>& x) {
    double big = 0.0;
    for (const auto& row : m)
        for (int j = 0; j < 6; ++j) big = std::max(big, std::abs(row[j]));
    for (int c = 0; c < 6; ++c) {
        int piv = c;
        for (int r = c + 1; r < 6; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (!(std::abs(m[piv][c]) > 1e-13 * big)) return false;
        std::swap(m[c], m[piv]);
        for (int r = c + 1; r < 6; ++r) {
            const double f = m[r][c] / m[c][c];
            for (int j = c; j < 7; ++j) m[r][j] -= f * m[c][j];
        }
    }
    for (int r = 5; r >= 0; --r) {
        double v = m[r][6];
        for (int j = r + 1; j < 6; ++j) v -= m[r][j] * x[j];
        x[r] = v / m[r][r];
    }
    return true;
}

// Joint Newton on both nodes; only valid while every distance in the tree is positive.
// Returns false (leaving the nodes untouched) when a step cannot be taken.
bool joint_newton_step(const TetInstance& tet, const WeightSystem& w, Point3& o12, Point3& o34, double& cost,
                       double tiny) {
    std::array<std::array<double, 7>, 6> m{};
    auto add_term = [&](int block, const Point3& x, const Point3& p, double weight) {
        const Vec3 d = x - p;
        const double n = norm(d);
        if (!(n > tiny)) return false;
        const Vec3 e = d / n;
        const double s = weight / n;
        for (int i = 0; i < 3; ++i) {
            m[block + i][6] -= weight * e[i];
            for (int j = 0; j < 3; ++j) m[block + i][block + j] += s * ((i == j) - e[i] * e[j]);
        }
        return true;
    };
    if (!add_term(0, o12, tet.a1(), w.b1) || !add_term(0, o12, tet.a2(), w.b2) ||
        !add_term(3, o34, tet.a3(), w.b3) || !add_term(3, o34, tet.a4(), w.b4)) {
        return false;
    }
    const Vec3 d = o12 - o34;
    const double n = norm(d);
    if (!(n > tiny)) return false;
    const Vec3 e = d / n;
    const double s = w.b_st / n;
    for (int i = 0; i < 3; ++i) {
        m[i][6] -= w.b_st * e[i];
        m[3 + i][6] += w.b_st * e[i];
        for (int j = 0; j < 3; ++j) {
            const double k = s * ((i == j) - e[i] * e[j]);
            m[i][j] += k;
            m[3 + i][3 + j] += k;
            m[i][3 + j] -= k;
            m[3 + i][j] -= k;
        }
    }
    std::array<double, 6> step{};
    if (!solve6(m, step)) return false;
    const Vec3 s12{step[0], step[1], step[2]}, s34{step[3], step[4], step[5]};
    double t = 1.0;
    for (int k = 0; k < 40; ++k, t *= 0.5) {
        const Point3 c12 = o12 + t * s12, c34 = o34 + t * s34;
        const double cc = two_node_cost(tet, w, c12, c34);
        if (cc <= cost) {
            o12 = c12;
            o34 = c34;
            cost = cc;
            return true;
        }
    }
    return false;
}

// With `bail_on_merge`, stops as soon as the nodes are nearly merged; the caller then
// decides the collapsed case directly instead of crawling toward it.
RestartOutcome alternate(const TetInstance& tet, const WeightSystem& w, Point3 o12, Point3 o34,
                         const OracleOptions& opts, double scale, bool bail_on_merge) {
    const std::array<double, 3> w12{w.b1, w.b2, w.b_st};
    const std::array<double, 3> w34{w.b3, w.b4, w.b_st};
    MedianOptions mo;
    mo.strict = false;
    RestartOutcome out;
    const double wsum = w.b1 + w.b2 + w.b3 + w.b4 + w.b_st;
    const double tiny = 1e-12 * scale;
    int last_polish = -1000;
    int sweep = 0;
    for (; sweep < opts.max_iter; ++sweep) {
        const std::array<Point3, 3> p12{tet.a1(), tet.a2(), o34};
        const Point3 n12 = weighted_median(p12, w12, mo).point;
        const std::array<Point3, 3> p34{tet.a3(), tet.a4(), n12};
        const Point3 n34 = weighted_median(p34, w34, mo).point;
        const double moved = std::max(distance(n12, o12), distance(n34, o34));
        o12 = n12;
        o34 = n34;
        double cost = two_node_cost(tet, w, o12, o34);
        out.trace.push_back(cost);
        if (moved <= opts.tol * scale) break;
        if (bail_on_merge && distance(o12, o34) < 1e-4 * scale) break;

        // Alternation is linear at best; try joint Newton every few sweeps once it settles.
        if (moved <= 1e-3 * scale && sweep - last_polish >= 8) {
            last_polish = sweep;
            for (int k = 0; k < 50; ++k) {
                if (!joint_newton_step(tet, w, o12, o34, cost, tiny)) break;
                out.trace.push_back(cost);
                if (two_node_residual(tet, w, o12, o34) <= 1e-14 * wsum) break;
            }
        }
    }
    if (sweep == opts.max_iter) {
        throw NoConvergenceError("two-node alternating minimization hit max_iter", sweep);
    }
    out.o12 = o12;
    out.o34 = o34;
    out.cost = out.trace.back();
    out.sweeps = sweep + 1;
    return out;
}

// The alternation cannot leave O12 == O34: each block sees the other node as a heavy
// terminal. From a collapsed point go to the 4-point median and split it if that pays.
RestartOutcome escape_collapse(const TetInstance& tet, const WeightSystem& w, RestartOutcome got,
                               const OracleOptions& opts, double scale) {
    const std::array<double, 4> wt{w.b1, w.b2, w.b3, w.b4};
    const Point3 x = weighted_median(tet.vertices, wt).point;
    const double star = two_node_cost(tet, w, x, x);
    Vec3 pull12, pull34;
    for (int i = 0; i < 4; ++i) {
        const Vec3 d = tet.vertices[i] - x;
        if (norm(d) <= 1e-12 * scale) continue;
        (i < 2 ? pull12 : pull34) += wt[i] * normalized(d);
    }
    if (norm(pull12) > w.b_st && norm(pull34) > w.b_st) {
        const double step = 1e-3 * scale;
        RestartOutcome split = alternate(tet, w, x + step * normalized(pull12), x + step * normalized(pull34), opts,
                                         scale, false);
        split.trace.insert(split.trace.begin(), got.trace.begin(), got.trace.end());
        split.sweeps += got.sweeps;
        if (split.cost < star) return split;
    }
    if (star < got.cost) {
        got.o12 = got.o34 = x;
        got.cost = star;
        got.trace.push_back(star);
    }
    return got;
}

}  // namespace

OracleResult minimize_two_nodes(const TetInstance& tet, const WeightSystem& w, const OracleOptions& opts) {
    if (opts.restarts < 1) throw SolverError(ErrorCode::InvalidInput, "oracle needs at least one restart");
    const double scale = bbox_diagonal(tet.vertices);
    Vec3 lo = tet.a1(), hi = tet.a1();
    for (const auto& p : tet.vertices) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    std::mt19937_64 rng(opts.seed);
    auto sample = [&] {
        const double ux = unit_uniform(rng), uy = unit_uniform(rng), uz = unit_uniform(rng);
        return Point3{lo.x + ux * (hi.x - lo.x), lo.y + uy * (hi.y - lo.y), lo.z + uz * (hi.z - lo.z)};
    };

    const double tiny = 1e-7 * scale;
    OracleResult best;
    best.cost = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opts.restarts; ++r) {
        const Point3 s12 = sample();
        const Point3 s34 = sample();
        RestartOutcome out = alternate(tet, w, s12, s34, opts, scale, true);
        if (distance(out.o12, out.o34) < 1e-4 * scale) out = escape_collapse(tet, w, std::move(out), opts, scale);
        best.restart_costs.push_back(out.cost);
        if (out.cost < best.cost) {
            best.o12 = out.o12;
            best.o34 = out.o34;
            best.cost = out.cost;
            best.iterations = out.sweeps;
            best.cost_trace = std::move(out.trace);
        }
    }
    best.gradient_norm = two_node_residual(tet, w, best.o12, best.o34);
    best.collapsed = distance(best.o12, best.o34) < tiny;
    best.absorbed = distance(best.o12, tet.a1()) < tiny || distance(best.o12, tet.a2()) < tiny ||
                    distance(best.o34, tet.a3()) < tiny || distance(best.o34, tet.a4()) < tiny;
    return best;
}

SingleNodeResult minimize_single_node(const TetInstance& tet, std::span<const double, 4> weights) {
    const MedianResult m = weighted_median(tet.vertices, weights);
    SingleNodeResult out;
    out.point = m.point;
    out.iterations = m.iterations;
    out.gradient_norm = m.residual;
    for (std::size_t i = 0; i < 4; ++i) out.cost += weights[i] * distance(m.point, tet.vertices[i]);
    return out;
}

}  // namespace wsteiner
