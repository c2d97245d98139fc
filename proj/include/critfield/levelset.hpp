#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "critfield/planar_set.hpp"

namespace critfield {

struct LevelCurve {
    std::vector<Vec2> vertices;
    bool closed = false;
    int component = 0;
    Rect bbox{};
};

struct LevelCurveSet {
    double r = 0.0;
    double h = 0.0;
    Rect window{};
    std::vector<LevelCurve> chains;
    std::vector<Vec2> anomalies;  // merged crossing nodes of degree != 2
    std::size_t component_count = 0;
};

/// Marching-squares extraction of the distance sphere S_r(F) on a grid of
/// step h. Ambiguous (saddle) cells are resolved by evaluating d_F exactly at
/// the cell center. Crossing nodes closer than the chord-separation scale
/// 2h^2/r are merged; merged nodes with more than two incidences mark the
/// non-manifold signature.
LevelCurveSet extract(const PlanarCompactSet& F, double r, Rect window, double h);

struct ManifoldReport {
    std::size_t degree_anomalies = 0;
    std::vector<Vec2> anomaly_points;
    // focus mode
    std::size_t components_in_window = 0;
    std::size_t extra_components = 0;  // intersecting the ball, not containing focus
    bool focus_on_curve = false;
};

ManifoldReport manifold_diagnostic(const LevelCurveSet& curves, std::optional<Vec2> focus,
                                   double window_radius);

}  // namespace critfield
