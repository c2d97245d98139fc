#pragma once

#include <vector>

#include "critfield/geom.hpp"
#include "critfield/kernel.hpp"

namespace critfield {

struct Segment {
    Vec2 a;
    Vec2 b;
};

/// Finite compact planar set: points plus straight segments. Distance
/// queries are exact minima over the sites.
class PlanarCompactSet {
public:
    PlanarCompactSet(std::vector<Vec2> points, std::vector<Segment> segments = {});

    const std::vector<Vec2>& points() const { return points_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const kernel::Sites& sites() const { return sites_; }
    std::size_t site_count() const { return points_.size() + segments_.size(); }

    double diameter() const { return diameter_; }
    Rect bounding_box() const { return bbox_; }

    PlanarCompactSet translated(Vec2 t) const;
    /// Subset of sites that can realize the distance somewhere in
    /// B(center, radius): those within dist(center) + 2*radius. Exact by the
    /// restriction property of distance minima.
    PlanarCompactSet restricted_to_ball(Vec2 center, double radius) const;

private:
    std::vector<Vec2> points_;
    std::vector<Segment> segments_;
    kernel::Sites sites_;
    Rect bbox_{};
    double diameter_ = 0.0;
};

}  // namespace critfield
