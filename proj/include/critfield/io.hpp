#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "critfield/distfield.hpp"
#include "critfield/levelset.hpp"
#include "critfield/planar_set.hpp"
#include "critfield/realset.hpp"

namespace critfield::io {

using nlohmann::json;

/// On-disk real-set document:
/// {"intervals": [[l,u],...], "tail_gap_sum": {"alpha": a, "bound": t}}
struct RealSetDoc {
    CompactRealSet set;
    std::optional<std::pair<double, double>> tail;  // (alpha, bound)
};

json to_json(const CompactRealSet& set,
             std::optional<std::pair<double, double>> tail = std::nullopt);
RealSetDoc real_set_from_json(const json& j);

/// Planar-set document: {"points": [[x,y],...], "segments": [[[ax,ay],[bx,by]],...]}
json to_json(const PlanarCompactSet& F);
PlanarCompactSet planar_set_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

std::string records_csv(std::span<const CriticalRecord> records);
std::string profile_csv(const MinkowskiProfile& prof);

/// Minimal deterministic SVG writer (no timestamps).
class SvgWriter {
public:
    SvgWriter(Rect view, double stroke_scale = 1.0);
    void add_point(Vec2 p, const std::string& color, double radius = 0.0);
    void add_segment(Vec2 a, Vec2 b, const std::string& color);
    void add_circle(Vec2 center, double radius, const std::string& color, bool fill = false);
    void add_polyline(std::span<const Vec2> pts, const std::string& color, bool closed);
    std::string str() const;
    void save(const std::string& path) const;

private:
    Rect view_;
    double unit_;
    std::string body_;
};

}  // namespace critfield::io
