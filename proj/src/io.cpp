#include "critfield/io.hpp"

#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace critfield::io {

json to_json(const CompactRealSet& set, std::optional<std::pair<double, double>> tail) {
    json j;
    j["intervals"] = json::array();
    for (const auto& iv : set.intervals()) j["intervals"].push_back({iv.lo, iv.hi});
    if (tail) {
        // declared tails are extended reals; infinity marks a divergent tail
        json bound = std::isfinite(tail->second) ? json(tail->second) : json("inf");
        j["tail_gap_sum"] = {{"alpha", tail->first}, {"bound", bound}};
    }
    return j;
}

RealSetDoc real_set_from_json(const json& j) {
    RealSetDoc doc;
    std::vector<Interval> ivs;
    for (const auto& e : j.at("intervals")) {
        if (e.size() != 2) throw std::invalid_argument("interval entries must be pairs");
        ivs.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    doc.set = CompactRealSet::from_intervals(std::move(ivs));
    if (j.contains("tail_gap_sum")) {
        const auto& t = j.at("tail_gap_sum");
        const auto& b = t.at("bound");
        double bound = b.is_string() ? std::numeric_limits<double>::infinity()
                                     : b.get<double>();
        doc.tail = {t.at("alpha").get<double>(), bound};
    }
    return doc;
}

json to_json(const PlanarCompactSet& F) {
    json j;
    j["points"] = json::array();
    for (const auto& p : F.points()) j["points"].push_back({p.x, p.y});
    j["segments"] = json::array();
    for (const auto& s : F.segments())
        j["segments"].push_back({{s.a.x, s.a.y}, {s.b.x, s.b.y}});
    return j;
}

PlanarCompactSet planar_set_from_json(const json& j) {
    std::vector<Vec2> pts;
    std::vector<Segment> segs;
    if (j.contains("points"))
        for (const auto& e : j.at("points")) pts.push_back({e[0].get<double>(), e[1].get<double>()});
    if (j.contains("segments"))
        for (const auto& e : j.at("segments"))
            segs.push_back({{e[0][0].get<double>(), e[0][1].get<double>()},
                            {e[1][0].get<double>(), e[1][1].get<double>()}});
    return PlanarCompactSet(std::move(pts), std::move(segs));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string records_csv(std::span<const CriticalRecord> records) {
    std::ostringstream out;
    out.precision(17);
    out << "x,y,value,residual\n";
    for (const auto& r : records)
        out << r.location.x << "," << r.location.y << "," << r.value << "," << r.residual
            << "\n";
    return out.str();
}

std::string profile_csv(const MinkowskiProfile& prof) {
    std::ostringstream out;
    out.precision(17);
    out << "r,measure,ratio\n";
    for (const auto& p : prof.points) out << p.r << "," << p.measure << "," << p.ratio << "\n";
    return out.str();
}

SvgWriter::SvgWriter(Rect view, double stroke_scale) : view_(view) {
    unit_ = stroke_scale * std::max(view.width(), view.height()) / 1000.0;
}

void SvgWriter::add_point(Vec2 p, const std::string& color, double radius) {
    add_circle(p, radius > 0 ? radius : 1.5 * unit_, color, true);
}

void SvgWriter::add_segment(Vec2 a, Vec2 b, const std::string& color) {
    std::ostringstream s;
    s.precision(12);
    s << "<line x1=\"" << a.x << "\" y1=\"" << -a.y << "\" x2=\"" << b.x << "\" y2=\""
      << -b.y << "\" stroke=\"" << color << "\" stroke-width=\"" << unit_ << "\"/>\n";
    body_ += s.str();
}

void SvgWriter::add_circle(Vec2 center, double radius, const std::string& color, bool fill) {
    std::ostringstream s;
    s.precision(12);
    s << "<circle cx=\"" << center.x << "\" cy=\"" << -center.y << "\" r=\"" << radius
      << "\" stroke=\"" << color << "\" stroke-width=\"" << unit_ << "\" fill=\""
      << (fill ? color : std::string("none")) << "\"/>\n";
    body_ += s.str();
}

void SvgWriter::add_polyline(std::span<const Vec2> pts, const std::string& color, bool closed) {
    if (pts.empty()) return;
    std::ostringstream s;
    s.precision(12);
    s << (closed ? "<polygon points=\"" : "<polyline points=\"");
    for (const auto& p : pts) s << p.x << "," << -p.y << " ";
    s << "\" stroke=\"" << color << "\" stroke-width=\"" << unit_ << "\" fill=\"none\"/>\n";
    body_ += s.str();
}

std::string SvgWriter::str() const {
    std::ostringstream s;
    s.precision(12);
    double pad = 2.0 * unit_;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << view_.lo.x - pad << " "
      << -view_.hi.y - pad << " " << view_.width() + 2 * pad << " " << view_.height() + 2 * pad
      << "\">\n";
    s << body_ << "</svg>\n";
    return s.str();
}

void SvgWriter::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << str();
}

}  // namespace critfield::io
