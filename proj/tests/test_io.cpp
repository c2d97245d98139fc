#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "critfield/io.hpp"

using namespace critfield;

TEST_CASE("real set json round trip with a tail") {
    auto s = CompactRealSet::from_intervals({{0.0, 0.0}, {0.5, 0.75}, {1.0, 1.0}});
    auto j = io::to_json(s, std::make_pair(0.5, 0.125));
    auto doc = io::real_set_from_json(j);
    REQUIRE(doc.set.size() == 3);
    CHECK(doc.set.intervals()[1].lo == 0.5);
    CHECK(doc.set.intervals()[1].hi == 0.75);
    REQUIRE(doc.tail.has_value());
    CHECK(doc.tail->first == 0.5);
    CHECK(doc.tail->second == 0.125);
    // byte determinism of the serialized form
    CHECK(j.dump() == io::to_json(doc.set, doc.tail).dump());
}

TEST_CASE("planar set json round trip") {
    PlanarCompactSet F({{1.0, 2.0}}, {{{0.0, 0.0}, {3.0, 4.0}}});
    auto j = io::to_json(F);
    auto back = io::planar_set_from_json(j);
    REQUIRE(back.points().size() == 1);
    REQUIRE(back.segments().size() == 1);
    CHECK(back.points()[0].x == 1.0);
    CHECK(back.segments()[0].b.y == 4.0);
    CHECK(j.dump() == io::to_json(back).dump());
}

TEST_CASE("csv writers") {
    std::vector<CriticalRecord> recs{{{0.25, -1.5}, 2.0, {}, 0.0}};
    auto csv = io::records_csv(recs);
    CHECK(csv.find("x,y,value,residual") == 0);
    CHECK(csv.find("0.25,-1.5,2,0") != std::string::npos);

    MinkowskiProfile prof;
    prof.points.push_back({0.5, 1.25, 1.7677669529663689});
    auto pcsv = io::profile_csv(prof);
    CHECK(pcsv.find("r,measure,ratio") == 0);
    CHECK(pcsv.find("0.5,1.25,") != std::string::npos);
}

TEST_CASE("svg writer emits the layers deterministically") {
    io::SvgWriter svg({{-1.0, -1.0}, {1.0, 1.0}});
    svg.add_point({0.0, 0.0}, "#d00");
    svg.add_circle({0.0, 0.0}, 0.5, "#00d");
    std::vector<Vec2> poly{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}};
    svg.add_polyline(poly, "#0a0", true);
    auto s = svg.str();
    CHECK(s.find("<svg") == 0);
    CHECK(s.find("<circle") != std::string::npos);
    CHECK(s.find("<polygon") != std::string::npos);
    io::SvgWriter svg2({{-1.0, -1.0}, {1.0, 1.0}});
    svg2.add_point({0.0, 0.0}, "#d00");
    svg2.add_circle({0.0, 0.0}, 0.5, "#00d");
    svg2.add_polyline(poly, "#0a0", true);
    CHECK(s == svg2.str());
}

TEST_CASE("bad documents are rejected") {
    CHECK_THROWS(io::real_set_from_json(io::json{{"intervals", {{1.0}}}}));
    CHECK_THROWS(io::load_json_file("/nonexistent/path.json"));
}
