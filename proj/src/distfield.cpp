#include "critfield/distfield.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>

#include "critfield/detail/hull.hpp"
#include "critfield/parallel.hpp"

namespace critfield {

namespace detail {

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(),
              [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

namespace {
double origin_segment_distance(Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double len2 = norm_sq(d);
    if (len2 == 0.0) return norm(a);
    double t = std::clamp(dot(-a, d) / len2, 0.0, 1.0);
    return norm(a + t * d);
}
}  // namespace

double origin_distance(const std::vector<Vec2>& hull) {
    if (hull.empty()) return std::numeric_limits<double>::infinity();
    if (hull.size() == 1) return norm(hull[0]);
    if (hull.size() == 2) return origin_segment_distance(hull[0], hull[1]);
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        Vec2 a = hull[i];
        Vec2 b = hull[(i + 1) % hull.size()];
        if (cross(b - a, -a) < 0) {
            inside = false;
            break;
        }
    }
    if (inside) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i)
        best = std::min(best, origin_segment_distance(hull[i], hull[(i + 1) % hull.size()]));
    return best;
}

}  // namespace detail

double distance(const PlanarCompactSet& F, Vec2 x) {
    return std::sqrt(kernel::min_dist_sq(F.sites(), x.x, x.y));
}

double default_nearest_slack(double d) { return 1e-9 * d; }

NearestQuery nearest_points(const PlanarCompactSet& F, Vec2 x, double tol) {
    if (tol < 0) throw std::invalid_argument("nearest tolerance must be >= 0");
    NearestQuery q;
    q.d = distance(F, x);
    double limit = q.d + tol;
    double limit_sq = limit * limit;

    auto push_unique = [&](Vec2 p, std::size_t site) {
        double eps = 1e-12 * (1.0 + q.d);
        for (const auto& existing : q.nearest)
            if (std::abs(existing.x - p.x) <= eps && std::abs(existing.y - p.y) <= eps) return;
        q.nearest.push_back(p);
        q.site_index.push_back(site);
    };

    const auto& pts = F.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (norm_sq(x - pts[i]) <= limit_sq) push_unique(pts[i], i);
    const auto& segs = F.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& s = segs[i];
        Vec2 d = s.b - s.a;
        double t = std::clamp(dot(x - s.a, d) / norm_sq(d), 0.0, 1.0);
        Vec2 p = s.a + t * d;
        if (norm_sq(x - p) <= limit_sq) push_unique(p, pts.size() + i);
    }
    return q;
}

SubdiffHull clarke_hull_slack(const PlanarCompactSet& F, Vec2 x, double site_slack) {
    SubdiffHull out;
    out.nearest = nearest_points(F, x, site_slack);
    if (out.nearest.d <= 0.0) throw std::invalid_argument("on the set");
    for (const auto& p : out.nearest.nearest) out.directions.push_back(normalized(x - p));
    out.hull = detail::convex_hull(out.directions);
    out.residual = detail::origin_distance(out.hull);
    return out;
}

SubdiffHull clarke_hull(const PlanarCompactSet& F, Vec2 x, double tol) {
    double d = distance(F, x);
    if (d <= 0.0) throw std::invalid_argument("on the set");
    return clarke_hull_slack(F, x, std::max(tol, default_nearest_slack(d)));
}

std::pair<bool, double> is_critical(const PlanarCompactSet& F, Vec2 x, double tol) {
    SubdiffHull h = clarke_hull(F, x, tol);
    return {h.residual <= tol, h.residual};
}

DescentWitness descent_witness(const PlanarCompactSet& F, Vec2 x) {
    SubdiffHull h = clarke_hull(F, x, 0.0);
    if (h.residual <= 0.0) throw std::invalid_argument("descent_witness: point is critical");

    // closest hull point to the origin; -that direction maximizes the margin
    Vec2 closest{};
    double best = std::numeric_limits<double>::infinity();
    auto consider = [&](Vec2 a, Vec2 b) {
        Vec2 d = b - a;
        double len2 = norm_sq(d);
        double t = len2 == 0.0 ? 0.0 : std::clamp(dot(-a, d) / len2, 0.0, 1.0);
        Vec2 p = a + t * d;
        double n = norm(p);
        if (n < best) {
            best = n;
            closest = p;
        }
    };
    if (h.hull.size() == 1)
        consider(h.hull[0], h.hull[0]);
    else
        for (std::size_t i = 0; i < h.hull.size(); ++i)
            consider(h.hull[i], h.hull[(i + 1) % h.hull.size()]);

    DescentWitness w;
    w.v = normalized(-closest);
    w.margin = best;

    double d0 = h.nearest.d;
    double eps = w.margin / 2.0;
    w.decrease_verified = true;
    const double steps[3] = {1e-3, 1e-4, 1e-5};
    for (int i = 0; i < 3; ++i) {
        double t = steps[i] * d0;
        double fd = (distance(F, x + t * w.v) - d0) / t;
        w.finite_differences[i] = fd;
        if (!(fd < -eps)) w.decrease_verified = false;
    }
    return w;
}

namespace {

std::optional<Vec2> circumcenter(Vec2 a, Vec2 b, Vec2 c) {
    double d = 2.0 * cross(b - a, c - a);
    if (std::abs(d) < 1e-30) return std::nullopt;
    double a2 = norm_sq(a), b2 = norm_sq(b), c2 = norm_sq(c);
    Vec2 u{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
           (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    return u;
}

// Projection of x onto site primitive k (points first, then segments).
Vec2 project_to_site(const PlanarCompactSet& F, std::size_t k, Vec2 x) {
    if (k < F.points().size()) return F.points()[k];
    const Segment& s = F.segments()[k - F.points().size()];
    Vec2 d = s.b - s.a;
    double t = std::clamp(dot(x - s.a, d) / norm_sq(d), 0.0, 1.0);
    return s.a + t * d;
}

// Equidistant point of two site primitives near x0: fixed point of
// x -> midpoint of the two projections. Exact in one step for two points.
std::optional<Vec2> snap_pair(const PlanarCompactSet& F, std::size_t i, std::size_t j, Vec2 x0) {
    Vec2 x = x0;
    for (int it = 0; it < 60; ++it) {
        Vec2 p = project_to_site(F, i, x);
        Vec2 q = project_to_site(F, j, x);
        Vec2 nx = 0.5 * (p + q);
        if (norm_sq(nx - x) <= 1e-30 * (1.0 + norm_sq(x))) return nx;
        x = nx;
    }
    return x;
}

std::optional<Vec2> snap_triple(const PlanarCompactSet& F, std::size_t i, std::size_t j,
                                std::size_t k, Vec2 x0) {
    Vec2 x = x0;
    for (int it = 0; it < 60; ++it) {
        auto cc = circumcenter(project_to_site(F, i, x), project_to_site(F, j, x),
                               project_to_site(F, k, x));
        if (!cc) return std::nullopt;
        if (norm_sq(*cc - x) <= 1e-30 * (1.0 + norm_sq(x))) return cc;
        x = *cc;
    }
    return x;
}

struct Candidate {
    Vec2 location;
    double scale_residual;
};

}  // namespace

std::vector<CriticalRecord> scan_critical(const PlanarCompactSet& F, Rect window, double h,
                                          const ScanOptions& opt) {
    if (!(h > 0)) throw std::invalid_argument("scan_critical: h must be positive");
    double diam = F.diameter();

    std::size_t nx = std::size_t(std::floor(window.width() / h)) + 1;
    std::size_t ny = std::size_t(std::floor(window.height() / h)) + 1;

    // cvdiam band: critical values live in (0, diam], so critical points lie
    // within diam of F.
    {
        Vec2 c{(window.lo.x + window.hi.x) / 2, (window.lo.y + window.hi.y) / 2};
        double r_win = 0.5 * std::hypot(window.width(), window.height());
        if (distance(F, c) - r_win > diam) {
            std::cerr << "scan_critical: window does not meet the critical band; empty result\n";
            return {};
        }
    }

    const int tile = std::max(8, opt.tile);
    std::size_t tiles_x = (nx + tile - 1) / tile;
    std::size_t tiles_y = (ny + tile - 1) / tile;
    double coarse_slack = 3.0 * h;

    std::vector<std::vector<Candidate>> tile_candidates(tiles_x * tiles_y);
    parallel_for(tiles_x * tiles_y, [&](std::size_t t) {
        std::size_t tx = t % tiles_x;
        std::size_t ty = t / tiles_x;
        std::size_t x0 = tx * tile, x1 = std::min(nx, x0 + tile);
        std::size_t y0 = ty * tile, y1 = std::min(ny, y0 + tile);
        Vec2 c{window.lo.x + (double(x0 + x1) / 2 - 0.5) * h,
               window.lo.y + (double(y0 + y1) / 2 - 0.5) * h};
        double tile_radius = 0.75 * h * std::hypot(double(x1 - x0), double(y1 - y0));
        PlanarCompactSet local = F.restricted_to_ball(c, tile_radius + coarse_slack);

        for (std::size_t iy = y0; iy < y1; ++iy) {
            for (std::size_t ix = x0; ix < x1; ++ix) {
                Vec2 q{window.lo.x + double(ix) * h, window.lo.y + double(iy) * h};
                auto two = kernel::two_min_dist_sq(local.sites(), q.x, q.y);
                double d = std::sqrt(two.d1);
                if (d <= 1e-12 * (1.0 + diam) || d > diam + coarse_slack) continue;
                double limit = d + coarse_slack;
                if (two.d2 > limit * limit) continue;
                NearestQuery nq = nearest_points(local, q, coarse_slack);
                if (nq.nearest.size() < 2) continue;
                std::vector<Vec2> dirs;
                dirs.reserve(nq.nearest.size());
                for (const auto& p : nq.nearest) dirs.push_back(normalized(q - p));
                double r0 = detail::origin_distance(detail::convex_hull(std::move(dirs)));
                if (r0 <= opt.coarse_resid) tile_candidates[t].push_back({q, r0});
            }
        }
    });

    std::vector<Candidate> candidates;
    for (auto& v : tile_candidates)
        candidates.insert(candidates.end(), v.begin(), v.end());
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.scale_residual != b.scale_residual) return a.scale_residual < b.scale_residual;
        if (a.location.x != b.location.x) return a.location.x < b.location.x;
        return a.location.y < b.location.y;
    });

    // refine candidates by bisection on the residual, best first; candidates
    // falling into the basin of an accepted record are skipped
    std::vector<CriticalRecord> all;
    auto near_accepted = [&](Vec2 p, double radius) {
        for (const auto& rec : all)
            if (dist(rec.location, p) < radius) return true;
        return false;
    };
    for (const auto& cand : candidates) {
        if (near_accepted(cand.location, 2.0 * h)) continue;
        Vec2 x = cand.location;
        PlanarCompactSet local = F.restricted_to_ball(x, 4.0 * h + coarse_slack);
        double s = h;
        while (s > 1e-3 * h) {
            double step = s / 2;
            double best = std::numeric_limits<double>::infinity();
            Vec2 best_x = x;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dxi = -1; dxi <= 1; ++dxi) {
                    Vec2 q{x.x + dxi * step, x.y + dy * step};
                    NearestQuery nq = nearest_points(local, q, 3.0 * step);
                    if (nq.nearest.size() < 2) continue;
                    std::vector<Vec2> dirs;
                    for (const auto& p : nq.nearest) dirs.push_back(normalized(q - p));
                    double r = detail::origin_distance(detail::convex_hull(std::move(dirs)));
                    if (r < best) {
                        best = r;
                        best_x = q;
                    }
                }
            }
            x = best_x;
            s = step;
        }
        if (near_accepted(x, h)) continue;

        // snap to the exact equidistant candidate of the witness primitives;
        // the closest few carry the criticality
        NearestQuery nq = nearest_points(local, x, 8.0 * s);
        std::vector<std::size_t> prim = nq.site_index;
        std::sort(prim.begin(), prim.end());
        prim.erase(std::unique(prim.begin(), prim.end()), prim.end());
        if (prim.size() > 6) prim.resize(6);

        CriticalRecord best_rec;
        double best_resid = std::numeric_limits<double>::infinity();
        auto try_candidate = [&](Vec2 c) {
            if (norm(c - x) > 3.0 * h) return;
            double d = distance(F, c);
            if (d <= 1e-12 * (1.0 + diam)) return;
            SubdiffHull hull = clarke_hull(F, c, opt.tol);
            if (hull.residual <= opt.tol && hull.residual < best_resid) {
                best_resid = hull.residual;
                best_rec = {c, d, hull.nearest.nearest, hull.residual};
            }
        };
        for (std::size_t i = 0; i < prim.size() && best_resid > 0.0; ++i)
            for (std::size_t j = i + 1; j < prim.size() && best_resid > 0.0; ++j) {
                if (auto c = snap_pair(local, prim[i], prim[j], x)) try_candidate(*c);
                for (std::size_t k = j + 1; k < prim.size() && best_resid > 0.0; ++k)
                    if (auto c = snap_triple(local, prim[i], prim[j], prim[k], x))
                        try_candidate(*c);
            }

        if (best_resid < std::numeric_limits<double>::infinity()) {
            if (!near_accepted(best_rec.location, h)) all.push_back(best_rec);
        } else if (opt.keep_grid_records) {
            NearestQuery wq = nearest_points(F, x, 3.0 * s);
            std::vector<Vec2> dirs;
            for (const auto& p : wq.nearest) dirs.push_back(normalized(x - p));
            double r = detail::origin_distance(detail::convex_hull(std::move(dirs)));
            all.push_back({x, wq.d, wq.nearest, r});
        }
    }
    std::sort(all.begin(), all.end(), [](const CriticalRecord& a, const CriticalRecord& b) {
        if (a.location.x != b.location.x) return a.location.x < b.location.x;
        return a.location.y < b.location.y;
    });
    return all;
}

CompactRealSet critical_values(const PlanarCompactSet& F, double eps, double h,
                               const ScanOptions& opt) {
    if (!(eps > 0)) throw std::invalid_argument("critical_values: eps must be positive");
    double diam = F.diameter();
    Rect window = F.bounding_box().inflated(diam + eps);
    auto records = scan_critical(F, window, h, opt);
    std::vector<double> vals;
    for (const auto& r : records)
        if (r.value >= eps && r.value <= diam * (1.0 + 1e-12)) vals.push_back(r.value);
    if (vals.empty()) return CompactRealSet();
    return CompactRealSet::from_points(std::move(vals));
}

FerryReport ferry_check(std::span<const CriticalRecord> records, double tol) {
    if (records.size() < 2) throw std::invalid_argument("ferry_check: need >= 2 records");
    FerryReport rep;
    rep.slack = 10.0 * tol;
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (std::size_t j = i + 1; j < records.size(); ++j) {
            double lhs = std::abs(records[i].value - records[j].value);
            double mind = std::min(records[i].value, records[j].value);
            double rhs = norm_sq(records[i].location - records[j].location) / (2.0 * mind);
            ++rep.pairs;
            if (lhs > rhs + rep.slack) ++rep.violations;
            if (rhs > 0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / (rhs + rep.slack));
        }
    }
    return rep;
}

SemiconcavityReport semiconcavity_probe(const PlanarCompactSet& F, Vec2 a, int samples,
                                        std::uint64_t seed) {
    double delta = distance(F, a);
    if (!(delta > 0)) throw std::invalid_argument("semiconcavity_probe: d_F(a) must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto sample_ball = [&]() {
        while (true) {
            Vec2 p{unit(rng), unit(rng)};
            if (norm_sq(p) <= 1.0) return a + (0.49 * delta) * p;
        }
    };
    auto g = [&](Vec2 x) { return (2.0 / delta) * norm_sq(x - a) - distance(F, x); };

    SemiconcavityReport rep;
    for (int i = 0; i < samples; ++i) {
        Vec2 l = sample_ball();
        Vec2 r = sample_ball();
        Vec2 m = 0.5 * (l + r);
        double lhs = g(m);
        double rhs = 0.5 * (g(l) + g(r)) + 1e-10;
        ++rep.triples;
        if (lhs > rhs) {
            ++rep.failures;
            rep.worst_violation = std::max(rep.worst_violation, lhs - rhs);
        }
    }
    return rep;
}

bool restriction_check(const PlanarCompactSet& F, Vec2 a, double r, int grid_n) {
    if (!(distance(F, a) < r))
        throw std::invalid_argument("restriction_check: B(a,r) does not meet F");
    // whole primitives within 3r; contains F cap B(a,3r), itself inside F,
    // so the minima agree exactly on B(a,r)
    std::vector<Vec2> pts;
    std::vector<Segment> segs;
    for (const auto& p : F.points())
        if (norm(p - a) <= 3.0 * r) pts.push_back(p);
    for (const auto& s : F.segments())
        if (segment_dist_sq(a, s.a, s.b) <= 9.0 * r * r) segs.push_back(s);
    PlanarCompactSet near(std::move(pts), std::move(segs));

    for (int iy = 0; iy < grid_n; ++iy) {
        for (int ix = 0; ix < grid_n; ++ix) {
            Vec2 q{a.x + r * (2.0 * ix / (grid_n - 1) - 1.0),
                   a.y + r * (2.0 * iy / (grid_n - 1) - 1.0)};
            if (norm_sq(q - a) > r * r) continue;
            if (distance(F, q) != distance(near, q)) return false;
        }
    }
    return true;
}

}  // namespace critfield
