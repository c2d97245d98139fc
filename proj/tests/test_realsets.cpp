#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "critfield/realset.hpp"
#include "critfield/setgen.hpp"

using namespace critfield;

namespace {

CompactRealSet random_null_set(std::mt19937_64& rng, int n, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> pts;
    for (int i = 0; i < n; ++i) pts.push_back(u(rng));
    return CompactRealSet::from_points(std::move(pts));
}

}  // namespace

TEST_CASE("construction merges touching intervals and sorts") {
    auto s = CompactRealSet::from_intervals({{0.5, 1.0}, {0.0, 0.5}, {2.0, 3.0}});
    REQUIRE(s.size() == 2);
    CHECK(s.intervals()[0].lo == 0.0);
    CHECK(s.intervals()[0].hi == 1.0);
    CHECK(s.lebesgue() == doctest::Approx(2.0));
    CHECK_FALSE(s.null_represented());
    CHECK(CompactRealSet::from_points({1.0, 0.0, 1.0}).size() == 2);
    CHECK_THROWS(CompactRealSet::from_intervals({{1.0, 0.0}}));
}

TEST_CASE("gaps: two points, one gap") {
    auto g = gaps(CompactRealSet::from_points({0.0, 1.0}));
    REQUIRE(g.size() == 1);
    CHECK(g[0].lo == 0.0);
    CHECK(g[0].hi == 1.0);
}

TEST_CASE("gaps: single interval has none; empty set errors") {
    CHECK(gaps(CompactRealSet::from_intervals({{0.0, 1.0}})).empty());
    CHECK_THROWS_WITH(gaps(CompactRealSet()), "empty set");
}

TEST_CASE("gaps of the depth-2 middle-thirds set") {
    // direct construction oracle: [0,1/9],[2/9,1/3],[2/3,7/9],[8/9,1]
    auto c = cantor(1.0 / 3.0, 2);
    auto g = gaps(c.set);
    REQUIRE(g.size() == 3);
    CHECK(g[0].lo == doctest::Approx(1.0 / 9).epsilon(1e-14));
    CHECK(g[0].hi == doctest::Approx(2.0 / 9).epsilon(1e-14));
    CHECK(g[1].lo == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(g[1].hi == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(g[2].lo == doctest::Approx(7.0 / 9).epsilon(1e-14));
    CHECK(g[2].hi == doctest::Approx(8.0 / 9).epsilon(1e-14));
}

TEST_CASE("gap sums: hand values") {
    CHECK(gap_sum(CompactRealSet::from_points({0.0, 1.0}), 1.0) == doctest::Approx(1.0));
    CHECK(gap_sum(CompactRealSet::from_points({0.0, 0.25, 1.0}), 0.5) ==
          doctest::Approx(0.5 + std::sqrt(0.75)).epsilon(1e-12));
}

TEST_CASE("gap sum of deep Cantor truncation plus tail hits the closed form") {
    auto c = cantor(1.0 / 9.0, 40);
    double total = gap_sum(c.census(), 0.5) + c.tail_gap_sum(0.5);
    CHECK(total == doctest::Approx(std::sqrt(7.0)).epsilon(1e-9));
}

TEST_CASE("is_bt") {
    CHECK(is_bt(CompactRealSet::from_points({0.0, 0.5, 1.0}), 0.5).is_bt);
    CHECK_FALSE(is_bt(CompactRealSet::from_intervals({{0.0, 1.0}}), 0.7).is_bt);
    // depth-20 C(1/3) skeleton with its analytic tail at alpha = 0.7 > ln2/ln3
    auto c = cantor(1.0 / 3.0, 20);
    auto rep = is_bt(c.endpoint_census(), 0.7, c.tail_gap_sum(0.7));
    CHECK(rep.is_bt);
    CHECK(std::isfinite(rep.tail_bound));
    // declared divergent tail flips the verdict
    CHECK_FALSE(is_bt(c.endpoint_census(), 0.3, c.tail_gap_sum(0.3)).is_bt);
}

TEST_CASE("parallel measure: two points") {
    auto s = CompactRealSet::from_points({0.0, 1.0});
    CHECK(parallel_measure(s, 0.1) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(parallel_measure(s, 0.6) == doctest::Approx(2.2).epsilon(1e-14));
}

TEST_CASE("parallel measure: Cantor at r = 1/18 equals 8/9 via both routes") {
    auto c = cantor(1.0 / 3.0, 8);
    double via_gaps = parallel_measure_gap_route(GapCensus::of(c.set), 1.0 / 18.0);
    double direct = parallel_measure_direct(c.set, 1.0 / 18.0);
    CHECK(via_gaps == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(direct == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    CHECK(parallel_measure(c.set, 1.0 / 18.0) == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("parallel measure: the two routes agree on random sets") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        CompactRealSet s;
        if (rep % 3 == 0) {
            std::vector<Interval> ivs;
            for (int i = 0; i < 12; ++i) {
                double a = u(rng), b = a + 0.05 * u(rng);
                ivs.push_back({a, b});
            }
            s = CompactRealSet::from_intervals(std::move(ivs));
        } else {
            s = random_null_set(rng, 30);
        }
        double r = 0.001 + 0.3 * u(rng);
        double via_gaps = parallel_measure_gap_route(GapCensus::of(s), r);
        double direct = parallel_measure_direct(s, r);
        double scale = std::max(via_gaps, direct);
        CHECK(std::abs(via_gaps - direct) <= 1e-12 * scale);
        CHECK_NOTHROW(parallel_measure(s, r));
    }
}

TEST_CASE("minkowski profile: single point vanishes like 2 sqrt(r)") {
    auto s = CompactRealSet::from_points({0.0});
    std::vector<double> grid{0.1, 0.01, 0.001};
    auto prof = minkowski_profile(s, 0.5, grid);
    REQUIRE(prof.points.size() == 3);
    for (const auto& p : prof.points)
        CHECK(p.ratio == doctest::Approx(2.0 * std::sqrt(p.r)).epsilon(1e-12));
    CHECK(prof.points[2].ratio < prof.points[0].ratio);
}

TEST_CASE("minkowski profile: C(1/3) bounded away from 0 and infinity at its dimension") {
    auto c = cantor(1.0 / 3.0, 30);
    double s = std::log(2.0) / std::log(3.0);
    std::vector<double> grid;
    for (int k = 2; k <= 25; ++k) grid.push_back(std::pow(3.0, -k));
    auto prof = minkowski_profile(c.census(), s, grid);
    CHECK(prof.ratio_min > 0.5);
    CHECK(prof.ratio_max < 4.0);
    CHECK(prof.ratio_max / prof.ratio_min < 3.0);
}

TEST_CASE("minkowski profile input validation") {
    auto s = CompactRealSet::from_points({0.0, 1.0});
    std::vector<double> bad{0.1, 0.2};
    CHECK_THROWS(minkowski_profile(s, 0.5, bad));
    std::vector<double> ok{0.2, 0.1};
    CHECK_THROWS(minkowski_profile(CompactRealSet::from_intervals({{0.0, 1.0}}), 0.5, ok));
}

TEST_CASE("bt index estimate: Cantor dimensions and flat census") {
    auto c3 = cantor(1.0 / 3.0, 30);
    double est = bt_index_estimate(c3.census()).index;
    CHECK(std::abs(est - std::log(2.0) / std::log(3.0)) < 0.05);

    auto c005 = cantor(0.05, 30);
    est = bt_index_estimate(c005.census()).index;
    CHECK(std::abs(est - std::log(2.0) / (-std::log(0.05))) < 0.05);

    std::vector<double> eq;
    for (int i = 0; i < 100; ++i) eq.push_back(i / 99.0);
    CHECK(bt_index_estimate(CompactRealSet::from_points(std::move(eq))).index ==
          doctest::Approx(0.0));

    CHECK_THROWS_WITH(bt_index_estimate(CompactRealSet::from_points({0, 0.5, 1})),
                      "insufficient resolution");
}

TEST_CASE("split_bounded_gapsum") {
    double delta = 2.0;
    SUBCASE("single piece when the gap sum is already small") {
        std::vector<double> pts;
        for (int i = 0; i <= 8; ++i) pts.push_back(1.0 + i / 8.0);
        auto K = CompactRealSet::from_points(std::move(pts));
        auto pieces = split_bounded_gapsum(K, delta);
        REQUIRE(pieces.size() == 1);
        CHECK(pieces[0].size() == K.size());
    }
    SUBCASE("threshold rule splits and every bound holds") {
        std::vector<double> pts;
        for (int i = 0; i <= 32; ++i) pts.push_back(1.0 + i / 32.0);
        auto K = CompactRealSet::from_points(std::move(pts));
        double total = gap_sum(K, 0.5);
        auto pieces = split_bounded_gapsum(K, delta);
        CHECK(double(pieces.size()) <= total / std::sqrt(delta) + 1.0);
        CompactRealSet uni;
        for (const auto& p : pieces) {
            if (p.size() >= 2) CHECK(gap_sum(p, 0.5) <= 2.0 * std::sqrt(delta) + 1e-12);
            uni = uni.empty() ? p : uni.unite(p);
        }
        CHECK(uni.size() == K.size());
    }
    SUBCASE("single point") {
        auto pieces = split_bounded_gapsum(CompactRealSet::from_points({1.5}), delta);
        REQUIRE(pieces.size() == 1);
    }
    SUBCASE("domain check") {
        CHECK_THROWS(split_bounded_gapsum(CompactRealSet::from_points({0.2, 1.0}), delta));
    }
}

TEST_CASE("holder image bound") {
    std::vector<double> pts{0.0, 1.0, 2.0};
    SUBCASE("identity") {
        auto r = holder_image_bound(pts, std::vector<double>{0.0, 1.0, 2.0}, 1.0);
        CHECK(r.bound == doctest::Approx(2.0));
        CHECK(r.actual == doctest::Approx(2.0));
    }
    SUBCASE("squares") {
        auto r = holder_image_bound(pts, std::vector<double>{0.0, 1.0, 4.0}, 1.0);
        CHECK(r.bound == doctest::Approx(4.0));
        CHECK(r.actual == doctest::Approx(4.0));
    }
    SUBCASE("reordering keeps the bound above the image gap sum") {
        auto r = holder_image_bound(pts, std::vector<double>{0.0, 3.0, 1.0}, 1.0);
        CHECK(r.bound == doctest::Approx(5.0));
        CHECK(r.actual == doctest::Approx(3.0));
        CHECK(r.actual <= r.bound);
    }
    SUBCASE("non-injective values rejected") {
        CHECK_THROWS(holder_image_bound(pts, std::vector<double>{0.0, 1.0, 1.0}, 1.0));
    }
}

TEST_CASE("property: gap-sum monotone under nested null sets") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        auto K2 = random_null_set(rng, 40);
        std::vector<double> sub;
        for (const auto& iv : K2.intervals())
            if (u(rng) < 0.5) sub.push_back(iv.lo);
        if (sub.empty()) sub.push_back(K2.min());
        auto K1 = CompactRealSet::from_points(std::move(sub));
        double alpha = 0.05 + 0.9 * u(rng);
        CHECK(gap_sum(K1, alpha) <= gap_sum(K2, alpha) * (1 + 1e-12) + 1e-12);
    }
}

TEST_CASE("property: gap-sum subadditive over unions with the (k-1)(d-c)^a excess") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double c = 0.0, d = 1.0;
    for (int rep = 0; rep < 100; ++rep) {
        int k = 2 + int(u(rng) * 3);
        double alpha = 0.05 + 0.9 * u(rng);
        CompactRealSet uni;
        double sum = 0.0;
        for (int i = 0; i < k; ++i) {
            auto A = random_null_set(rng, 3 + int(u(rng) * 20), c, d);
            sum += gap_sum(A, alpha);
            uni = uni.empty() ? A : uni.unite(A);
        }
        double lhs = gap_sum(uni, alpha);
        CHECK(lhs <= sum + (k - 1) * std::pow(d - c, alpha) + 1e-9);
    }
}

TEST_CASE("property: compact subsets of finite unions of BT sets stay BT") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        CompactRealSet uni;
        for (int i = 0; i < 3; ++i) {
            auto A = random_null_set(rng, 20);
            REQUIRE(is_bt(A, 0.5).is_bt);
            uni = uni.empty() ? A : uni.unite(A);
        }
        std::vector<double> sub;
        for (const auto& iv : uni.intervals())
            if (u(rng) < 0.7) sub.push_back(iv.lo);
        if (sub.empty()) sub.push_back(uni.min());
        CHECK(is_bt(CompactRealSet::from_points(std::move(sub)), 0.5).is_bt);
    }
}

TEST_CASE("parallel-set ratio decays along deeper truncations above the index") {
    // lambda_1(B_r)/r^(1-a) at r = a_n/2 shrinks as depth grows when a
    // exceeds the gap-census index
    double alpha = 0.7;
    double prev = std::numeric_limits<double>::infinity();
    for (int depth = 4; depth <= 14; depth += 2) {
        auto c = cantor(1.0 / 3.0, depth);
        double r = std::pow(3.0, -depth) / 2.0;
        double ratio = parallel_measure(c.census(), r) / std::pow(r, 1.0 - alpha);
        CHECK(ratio < prev);
        prev = ratio;
    }
}

TEST_CASE("parallel measures of the ternary set satisfy the scaling recursion") {
    // both halves scale by 1/3 and the separating gap exceeds 2r, so
    // lambda_1(B_{r/3}) = (2/3) lambda_1(B_r) down to the truncation scale
    auto census = cantor(1.0 / 3.0, 30).census();
    double prev = parallel_measure(census, std::pow(3.0, -2));
    for (int k = 3; k <= 25; ++k) {
        double cur = parallel_measure(census, std::pow(3.0, -k));
        CHECK(cur == doctest::Approx((2.0 / 3.0) * prev).epsilon(1e-9));
        prev = cur;
    }
}
