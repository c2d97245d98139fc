#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "critfield/planar_set.hpp"
#include "critfield/realset.hpp"

namespace critfield {

double distance(const PlanarCompactSet& F, Vec2 x);

struct NearestQuery {
    double d = 0.0;
    /// Realizing points on the sites within absolute slack tol of the minimum,
    /// deduplicated by location.
    std::vector<Vec2> nearest;
    /// Index of the site primitive behind each nearest point: point sites
    /// first, then segments.
    std::vector<std::size_t> site_index;
};

NearestQuery nearest_points(const PlanarCompactSet& F, Vec2 x, double tol);

/// Convex hull of the unit directions (x-p)/|x-p| over the nearest points p.
/// The computational Clarke subdifferential of d_F at x off F.
struct SubdiffHull {
    std::vector<Vec2> directions;
    std::vector<Vec2> hull;  // convex polygon, ccw; may be a point or segment
    double residual = 0.0;   // distance from the origin to the hull
    NearestQuery nearest;
};

/// Default nearest-site slack: grid points almost never hit multi-nearest
/// loci exactly, so sites within d*(1 + 1e-9) count as nearest.
double default_nearest_slack(double d);

SubdiffHull clarke_hull(const PlanarCompactSet& F, Vec2 x, double tol);
SubdiffHull clarke_hull_slack(const PlanarCompactSet& F, Vec2 x, double site_slack);

std::pair<bool, double> is_critical(const PlanarCompactSet& F, Vec2 x, double tol);

struct DescentWitness {
    Vec2 v;               // unit direction separating the hull from 0
    double margin = 0.0;  // separation margin (= hull residual)
    std::array<double, 3> finite_differences{};
    bool decrease_verified = false;
};

DescentWitness descent_witness(const PlanarCompactSet& F, Vec2 x);

struct CriticalRecord {
    Vec2 location;
    double value = 0.0;
    std::vector<Vec2> witnesses;
    double residual = 0.0;
};

struct ScanOptions {
    double tol = 1e-9;        // residual acceptance for exact records
    double coarse_resid = 0.5;
    int tile = 64;
    bool keep_grid_records = false;  // keep refined records that failed the snap
};

/// Grid scan for critical points: cells whose center passes the tolerant-hull
/// test are refined by bisection on the residual down to 1e-3*h, snapped to
/// the exact equidistant candidate of their witness primitives, and
/// deduplicated within radius h. Completeness is heuristic; h is the
/// resolution of the claim.
std::vector<CriticalRecord> scan_critical(const PlanarCompactSet& F, Rect window, double h,
                                          const ScanOptions& opt = {});

/// Values of detected critical points >= eps, as a point set inside
/// [eps, diam F].
CompactRealSet critical_values(const PlanarCompactSet& F, double eps, double h,
                               const ScanOptions& opt = {});

struct FerryReport {
    std::size_t pairs = 0;
    std::size_t violations = 0;
    double worst_ratio = 0.0;  // max LHS/RHS over pairs with RHS > 0
    double slack = 0.0;
};

/// Pairwise quadratic control |d(v)-d(w)| <= (2 min d)^-1 |v-w|^2 + slack
/// over critical records, slack = 10*tol.
FerryReport ferry_check(std::span<const CriticalRecord> records, double tol);

struct SemiconcavityReport {
    std::size_t triples = 0;
    std::size_t failures = 0;
    double worst_violation = 0.0;
};

/// Midpoint-convexity probe of g(x) = (2/delta)|x-a|^2 - d_F(x) on random
/// collinear triples inside B(a, delta/2), delta = d_F(a).
SemiconcavityReport semiconcavity_probe(const PlanarCompactSet& F, Vec2 a, int samples,
                                        std::uint64_t seed = 0);

/// Checks d_F == d_{F cap B(a,3r)} exactly on a sample grid of B(a, r).
bool restriction_check(const PlanarCompactSet& F, Vec2 a, double r, int grid_n = 32);

}  // namespace critfield
