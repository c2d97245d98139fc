#pragma once

#include <span>
#include <vector>

#include "critfield/geom.hpp"

namespace critfield {

/// Point of the hyperbolic plane of curvature -1/kappa^2 in unit-disk
/// coordinates (|z| < 1), metric 2*kappa/(1-|z|^2) |dz|.
struct HPoint {
    Vec2 z;
    double kappa = 1.0;
};

HPoint hpoint(Vec2 z, double kappa);
/// Flat-limit chart: z = x / (2 kappa), so distances approach |x - y| as
/// kappa grows with x fixed.
HPoint from_flat(Vec2 x, double kappa);

double hdist(const HPoint& p, const HPoint& q);  // throws on curvature mismatch

/// Euclidean unit direction at p of the geodesic toward q (the model is
/// conformal, so angle arithmetic on these is Riemannian angle arithmetic).
Vec2 log_dir(const HPoint& p, const HPoint& q);
HPoint exp_map(const HPoint& p, Vec2 unit_dir, double t);

double hyp_distance_to_set(std::span<const HPoint> F, const HPoint& x);

/// Unit tangent directions at the base toward its nearest sites, scaled to
/// unit Riemannian norm.
struct TangentFan {
    HPoint base;
    std::vector<Vec2> directions_metric;
    std::vector<Vec2> directions_euclid;
    double metric_scale = 0.0;  // 1 / (kappa * conformal factor)
};

struct HypCritical {
    bool critical = false;
    double residual = 0.0;
    TangentFan fan;
    double d = 0.0;
};

/// Criticality at x off F: the origin lies in the convex hull of the unit
/// directions away from the nearest sites (the planar form of the
/// maximal-angle criterion).
HypCritical hyp_critical(std::span<const HPoint> F, const HPoint& x, double tol);

/// Residual of cosh(c/k) = cosh(a/k) cosh(b/k) - sinh(a/k) sinh(b/k) cos(gamma).
double law_of_cosines_residual(double a, double b, double c, double gamma, double kappa);

/// Side c of the triangle with sides a, b at angle gamma, built in the model
/// from two geodesics; an oracle for the law of cosines.
double triangle_third_side(const HPoint& apex, double a, double b, double gamma);

struct CosineCheck {
    double alpha = 0.0;  // minimal angle between v and a nearest-site direction
    std::vector<std::pair<double, double>> fd;  // (t, finite difference)
    double max_error = 0.0;  // against -cos(alpha)
};

CosineCheck cosine_formula_check(std::span<const HPoint> F, const HPoint& x, Vec2 v_unit,
                                 std::span<const double> t_grid);

struct HypFerryReport {
    std::size_t pairs = 0;
    std::size_t violations = 0;
    double C = 0.0;  // cosh^2(2R/kappa)
    double worst_ratio = 0.0;
};

/// |d_F(x)^2 - d_F(y)^2| <= cosh^2(2R/kappa) dist(x,y)^2 over critical pairs.
HypFerryReport riemannian_ferry_check(std::span<const HPoint> F,
                                      std::span<const HPoint> records, double R,
                                      double kappa);

struct CoshCheck {
    bool first = false;   // cosh u - 1 <= u^2/2 cosh u
    bool second = false;  // |u^2 - v^2| <= 2 |cosh u - cosh v|
};

CoshCheck cosh_inequality_check(double u, double v);

}  // namespace critfield
