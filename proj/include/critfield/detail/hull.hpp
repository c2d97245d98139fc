#pragma once

#include <vector>

#include "critfield/geom.hpp"

namespace critfield::detail {

/// Convex hull (Andrew monotone chain), ccw, duplicates removed.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

/// Distance from the origin to a convex polygon/segment/point; 0 when the
/// origin lies inside or on it.
double origin_distance(const std::vector<Vec2>& hull);

}  // namespace critfield::detail
