#include "critfield/hyperbolic.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "critfield/detail/hull.hpp"

namespace critfield {
namespace {

using Cx = std::complex<double>;

Cx cx(Vec2 v) { return {v.x, v.y}; }
Vec2 vec(Cx z) { return {z.real(), z.imag()}; }

// Moebius translation taking p to the origin.
Cx to_origin(Cx p, Cx z) { return (z - p) / (1.0 - std::conj(p) * z); }
Cx from_origin(Cx p, Cx w) { return (w + p) / (1.0 + std::conj(p) * w); }

void check_pair(const HPoint& p, const HPoint& q) {
    if (p.kappa != q.kappa)
        throw std::invalid_argument("hyperbolic points with mismatched curvature");
}

}  // namespace

HPoint hpoint(Vec2 z, double kappa) {
    if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
    if (!(norm(z) < 1.0)) throw std::invalid_argument("disk coordinates need |z| < 1");
    return {z, kappa};
}

HPoint from_flat(Vec2 x, double kappa) { return hpoint({x.x / (2.0 * kappa), x.y / (2.0 * kappa)}, kappa); }

double hdist(const HPoint& p, const HPoint& q) {
    check_pair(p, q);
    double m = std::abs(to_origin(cx(p.z), cx(q.z)));
    return p.kappa * 2.0 * std::atanh(m);
}

Vec2 log_dir(const HPoint& p, const HPoint& q) {
    check_pair(p, q);
    Cx m = to_origin(cx(p.z), cx(q.z));
    double a = std::abs(m);
    if (a == 0.0) throw std::invalid_argument("log_dir: coincident points");
    return vec(m / a);
}

HPoint exp_map(const HPoint& p, Vec2 unit_dir, double t) {
    Cx w = std::tanh(t / (2.0 * p.kappa)) * cx(normalized(unit_dir));
    return {vec(from_origin(cx(p.z), w)), p.kappa};
}

double hyp_distance_to_set(std::span<const HPoint> F, const HPoint& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : F) best = std::min(best, hdist(x, s));
    return best;
}

HypCritical hyp_critical(std::span<const HPoint> F, const HPoint& x, double tol) {
    if (F.empty()) throw std::invalid_argument("empty set");
    HypCritical out;
    out.d = hyp_distance_to_set(F, x);
    if (!(out.d > 0)) throw std::invalid_argument("on the set");

    double lambda = 2.0 / (1.0 - norm_sq(x.z));
    out.fan.base = x;
    out.fan.metric_scale = 1.0 / (x.kappa * lambda);
    double slack = std::max(tol, 1e-9) * out.d;
    std::vector<Vec2> away;
    for (const auto& s : F) {
        if (hdist(x, s) <= out.d + slack) {
            Vec2 u = log_dir(x, s);
            out.fan.directions_euclid.push_back(u);
            out.fan.directions_metric.push_back(out.fan.metric_scale * u);
            away.push_back(-u);
        }
    }
    out.residual = detail::origin_distance(detail::convex_hull(away));
    out.critical = out.residual <= tol;
    return out;
}

double law_of_cosines_residual(double a, double b, double c, double gamma, double kappa) {
    return std::cosh(c / kappa) -
           (std::cosh(a / kappa) * std::cosh(b / kappa) -
            std::sinh(a / kappa) * std::sinh(b / kappa) * std::cos(gamma));
}

double triangle_third_side(const HPoint& apex, double a, double b, double gamma) {
    Vec2 u1{1.0, 0.0};
    Vec2 u2{std::cos(gamma), std::sin(gamma)};
    // directions at the apex: rotate into the apex tangent plane is a no-op,
    // the model is conformal and the choice of frame is free
    HPoint pa = exp_map(apex, u1, a);
    HPoint pb = exp_map(apex, u2, b);
    return hdist(pa, pb);
}

CosineCheck cosine_formula_check(std::span<const HPoint> F, const HPoint& x, Vec2 v_unit,
                                 std::span<const double> t_grid) {
    CosineCheck out;
    double d0 = hyp_distance_to_set(F, x);
    if (!(d0 > 0)) throw std::invalid_argument("on the set");
    Vec2 v = normalized(v_unit);

    double best_angle = M_PI;
    double slack = 1e-9 * d0;
    for (const auto& s : F) {
        if (hdist(x, s) <= d0 + slack) {
            Vec2 u = log_dir(x, s);
            double cosang = std::clamp(dot(u, v), -1.0, 1.0);
            best_angle = std::min(best_angle, std::acos(cosang));
        }
    }
    out.alpha = best_angle;

    double target = -std::cos(best_angle);
    for (double t : t_grid) {
        HPoint moved = exp_map(x, v, t);
        double fd = (hyp_distance_to_set(F, moved) - d0) / t;
        out.fd.emplace_back(t, fd);
        out.max_error = std::max(out.max_error, std::abs(fd - target));
    }
    return out;
}

HypFerryReport riemannian_ferry_check(std::span<const HPoint> F,
                                      std::span<const HPoint> records, double R,
                                      double kappa) {
    HypFerryReport rep;
    rep.C = std::pow(std::cosh(2.0 * R / kappa), 2.0);
    for (std::size_t i = 0; i < records.size(); ++i) {
        double di = hyp_distance_to_set(F, records[i]);
        for (std::size_t j = i + 1; j < records.size(); ++j) {
            double dj = hyp_distance_to_set(F, records[j]);
            double lhs = std::abs(di * di - dj * dj);
            double rhs = rep.C * std::pow(hdist(records[i], records[j]), 2.0);
            ++rep.pairs;
            double slack = 1e-12 * std::max(1.0, rhs);
            if (lhs > rhs + slack) ++rep.violations;
            if (rhs > 0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
        }
    }
    return rep;
}

CoshCheck cosh_inequality_check(double u, double v) {
    CoshCheck out;
    double slack = 1e-12 * std::max(1.0, std::cosh(u) + std::cosh(v));
    out.first = std::cosh(u) - 1.0 <= (u * u / 2.0) * std::cosh(u) + slack;
    out.second = std::abs(u * u - v * v) <= 2.0 * std::abs(std::cosh(u) - std::cosh(v)) + slack;
    return out;
}

}  // namespace critfield
