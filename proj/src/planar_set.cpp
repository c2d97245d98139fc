#include "critfield/planar_set.hpp"

#include <cmath>
#include <stdexcept>

namespace critfield {
namespace {

// Diameter of a finite union of points and segments is attained at extreme
// points, i.e. site points and segment endpoints.
double diameter_of(const std::vector<Vec2>& pts) {
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            best = std::max(best, norm_sq(pts[i] - pts[j]));
    return std::sqrt(best);
}

}  // namespace

PlanarCompactSet::PlanarCompactSet(std::vector<Vec2> points, std::vector<Segment> segments)
    : points_(std::move(points)), segments_(std::move(segments)) {
    if (points_.empty() && segments_.empty())
        throw std::invalid_argument("planar set must be nonempty");
    for (const auto& p : points_) sites_.add_point(p.x, p.y);
    for (const auto& s : segments_) sites_.add_segment(s.a.x, s.a.y, s.b.x, s.b.y);

    std::vector<Vec2> extremes = points_;
    for (const auto& s : segments_) {
        extremes.push_back(s.a);
        extremes.push_back(s.b);
    }
    bbox_ = {extremes.front(), extremes.front()};
    for (const auto& p : extremes) {
        bbox_.lo.x = std::min(bbox_.lo.x, p.x);
        bbox_.lo.y = std::min(bbox_.lo.y, p.y);
        bbox_.hi.x = std::max(bbox_.hi.x, p.x);
        bbox_.hi.y = std::max(bbox_.hi.y, p.y);
    }
    if (extremes.size() > 4000) {
        // exact diameter on huge site sets: take convex-hull extremes first
        std::vector<Vec2> hull = extremes;
        std::sort(hull.begin(), hull.end(), [](Vec2 a, Vec2 b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        });
        std::vector<Vec2> h;
        auto build = [&](auto begin, auto end) {
            std::size_t base = h.size();
            for (auto it = begin; it != end; ++it) {
                while (h.size() >= base + 2 &&
                       cross(h[h.size() - 1] - h[h.size() - 2], *it - h[h.size() - 2]) <= 0)
                    h.pop_back();
                h.push_back(*it);
            }
            h.pop_back();
        };
        build(hull.begin(), hull.end());
        build(hull.rbegin(), hull.rend());
        diameter_ = diameter_of(h);
    } else {
        diameter_ = diameter_of(extremes);
    }
}

PlanarCompactSet PlanarCompactSet::translated(Vec2 t) const {
    std::vector<Vec2> pts = points_;
    for (auto& p : pts) p = p + t;
    std::vector<Segment> segs = segments_;
    for (auto& s : segs) {
        s.a = s.a + t;
        s.b = s.b + t;
    }
    return PlanarCompactSet(std::move(pts), std::move(segs));
}

PlanarCompactSet PlanarCompactSet::restricted_to_ball(Vec2 center, double radius) const {
    double d = std::sqrt(kernel::min_dist_sq(sites_, center.x, center.y));
    double keep = d + 2.0 * radius;
    double keep_sq = keep * keep;
    std::vector<Vec2> pts;
    std::vector<Segment> segs;
    for (const auto& p : points_)
        if (norm_sq(p - center) <= keep_sq) pts.push_back(p);
    for (const auto& s : segments_)
        if (segment_dist_sq(center, s.a, s.b) <= keep_sq) segs.push_back(s);
    if (pts.empty() && segs.empty()) {
        // keep one nearest site so the restriction is never empty
        return *this;
    }
    return PlanarCompactSet(std::move(pts), std::move(segs));
}

}  // namespace critfield
