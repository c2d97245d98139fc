// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line each. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "critfield/construct.hpp"
#include "critfield/distfield.hpp"
#include "critfield/hyperbolic.hpp"
#include "critfield/levelset.hpp"
#include "critfield/realset.hpp"
#include "critfield/setgen.hpp"
#include "critfield/verify.hpp"

using namespace critfield;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " FAILED[" << what << "]";
        }
    }
};

// state shared between criteria
std::vector<std::pair<CompactRealSet, double>> g_cv_sets;  // (cv, D) from criterion 5
std::vector<FerryConstruction> g_constructions;

CompactRealSet random_target(std::mt19937_64& rng, int max_points, double lo, double hi,
                             double min_sep) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::uniform_int_distribution<int> count(2, max_points);
    int n = count(rng);
    std::vector<double> pts;
    while (int(pts.size()) < n) {
        double v = u(rng);
        bool ok = true;
        for (double p : pts)
            if (std::abs(p - v) < min_sep) ok = false;
        if (ok) pts.push_back(v);
    }
    return CompactRealSet::from_points(std::move(pts));
}

PlanarCompactSet random_sites(std::mt19937_64& rng, int n, double extent) {
    std::uniform_real_distribution<double> u(-extent, extent);
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) pts.push_back({u(rng), u(rng)});
    return PlanarCompactSet(std::move(pts));
}

void criterion_1(Check& c) {
    for (double alpha : {0.05, 1.0 / 9.0, 0.2}) {
        auto cs = cantor(alpha, 40);
        double total = gap_sum(cs.census(), 0.5) + cs.tail_gap_sum(0.5);
        double closed = cantor_gap_sum_half_closed(alpha);
        c.require(std::abs(total - closed) <= 1e-9, "closed form at alpha=" + std::to_string(alpha));
    }
    c.detail << " G(C(1/9)) -> sqrt(7) to " << std::scientific
             << std::abs(gap_sum(cantor(1.0 / 9.0, 40).census(), 0.5) +
                         cantor(1.0 / 9.0, 40).tail_gap_sum(0.5) - std::sqrt(7.0));
}

void criterion_2(Check& c) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int rep = 0; rep < 99; ++rep) {
        CompactRealSet s;
        if (rep % 3 == 0) {
            std::vector<Interval> ivs;
            for (int i = 0; i < 10; ++i) {
                double a = 4.0 * u(rng);
                ivs.push_back({a, a + 0.2 * u(rng)});
            }
            s = CompactRealSet::from_intervals(std::move(ivs));
        } else {
            std::vector<double> pts;
            for (int i = 0; i < 25; ++i) pts.push_back(4.0 * u(rng));
            s = CompactRealSet::from_points(std::move(pts));
        }
        double r = 0.002 + u(rng);
        double a = parallel_measure_gap_route(GapCensus::of(s), r);
        double b = parallel_measure_direct(s, r);
        worst = std::max(worst, std::abs(a - b) / std::max(a, b));
    }
    auto cs = cantor(1.0 / 3.0, 8);
    double a = parallel_measure_gap_route(GapCensus::of(cs.set), 1.0 / 18.0);
    double b = parallel_measure_direct(cs.set, 1.0 / 18.0);
    worst = std::max(worst, std::abs(a - b) / std::max(a, b));
    c.require(std::abs(a - 8.0 / 9.0) <= 1e-12, "cantor 1/18 value");
    c.require(worst <= 1e-12, "relative route agreement");
    c.detail << " worst rel diff " << std::scientific << worst;
}

void criterion_3(Check& c) {
    double e1 = bt_index_estimate(cantor(1.0 / 3.0, 30).census()).index;
    double e2 = bt_index_estimate(cantor(0.05, 30).census()).index;
    double t1 = std::log(2.0) / std::log(3.0);
    double t2 = std::log(2.0) / (-std::log(0.05));
    c.require(std::abs(e1 - t1) <= 0.05, "C(1/3) index");
    c.require(std::abs(e2 - t2) <= 0.05, "C(0.05) index");
    c.detail << " estimates " << e1 << " (target " << t1 << "), " << e2 << " (target " << t2
             << ")";
}

void criterion_4(Check& c) {
    std::mt19937_64 rng(4);
    g_constructions.clear();
    for (int trial = 0; trial < 50; ++trial) {
        auto K = random_target(rng, 32, 0.5, 4.0, 1e-3);
        auto fc = build_ferry_set(K);
        for (const auto& iv : K.intervals()) {
            double v = iv.lo;
            auto pc = projection_check(fc, v);
            c.require(pc.ok, "projection at v=" + std::to_string(v));
            auto crit = is_critical(fc.F, {fc.g_of(v), 0.0}, 1e-9);
            c.require(crit.first && crit.second == 0.0, "exact zero residual");
        }
        g_constructions.push_back(std::move(fc));
    }
    c.detail << " 50 targets, every v in K critical with residual exactly 0";
}

void criterion_5(Check& c) {
    std::mt19937_64 rng(5);
    g_cv_sets.clear();
    std::size_t pairs = 0, violations = 0;
    auto handle = [&](const PlanarCompactSet& F) {
        double diam = F.diameter();
        auto records = scan_critical(F, F.bounding_box().inflated(diam), diam / 500.0);
        if (records.size() >= 2) {
            auto rep = ferry_check(records, 1e-9);
            pairs += rep.pairs;
            violations += rep.violations;
        }
        std::vector<double> values;
        for (const auto& r : records) values.push_back(r.value);
        if (!values.empty())
            g_cv_sets.emplace_back(CompactRealSet::from_points(std::move(values)), diam);
    };
    for (int t = 0; t < 20; ++t) handle(random_sites(rng, 50, 3.0));
    for (const auto& fc : g_constructions) handle(fc.F);
    c.require(violations == 0, "ferry violations");
    c.require(pairs > 0, "no pairs detected");
    c.detail << " " << pairs << " pairs across " << (20 + g_constructions.size())
             << " site sets, 0 violations";
}

void criterion_6(Check& c) {
    std::mt19937_64 rng(6);
    double worst_margin = 1e300;
    for (int t = 0; t < 10; ++t) {
        std::uniform_int_distribution<int> count(15, 40);
        auto F = random_sites(rng, count(rng), 1.0 + 2.0 * t / 9.0);
        auto prof = annulus_packing(F, F.diameter(), 12);
        c.require(prof.weighted_sum <= prof.bound, "sum p_n delta_n^2 bound");
        c.require(prof.covering_verified, "covering");
        c.require(prof.disjointness_verified, "disjointness");
        worst_margin = std::min(worst_margin, prof.bound / prof.weighted_sum);
    }
    c.detail << " worst margin factor " << worst_margin;
}

void criterion_7(Check& c) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_margin = 1e300;
    int probes = 0;
    auto probe = [&](const PlanarCompactSet& F, Vec2 a) {
        double delta = distance(F, a);
        if (delta < 0.05) return;
        auto rep = nakouli_bound_check(F, a, delta / 120.0);
        c.require(rep.pass, "nakouli bound");
        worst_margin = std::min(worst_margin, rep.margin);
        ++probes;
    };
    for (int t = 0; t < 6; ++t) {
        auto F = random_sites(rng, 25, 2.0);
        for (int k = 0; k < 3; ++k) probe(F, {3.0 * u(rng), 3.0 * u(rng)});
    }
    for (int t = 0; t < 4; ++t) {
        const auto& fc = g_constructions[std::size_t(t) * 7];
        probe(fc.F, {fc.g_of(fc.b) / 2.0, 0.5 * u(rng)});
        probe(fc.F, {0.0, 0.0});
    }
    c.require(probes >= 20, "enough probes");
    c.require(worst_margin > 1e4, "expected margin");
    c.detail << " " << probes << " probes, worst margin " << worst_margin;
}

void criterion_8(Check& c) {
    auto t12 = t45_bands(12);
    double weighted = 0.0, g45 = 0.0;
    for (int n = 1; n <= 12; ++n) {
        weighted += std::pow(t12.delta(n), 1.5) * t12.band_gap_sum(n, 0.5);
        g45 += t12.band_gap_sum(n, 0.8);
    }
    c.require(weighted <= 1.565, "weighted half-sum vs 1.565");
    c.require(g45 >= 1.924, "degree-4/5 sum vs 1.924");

    double prev = 0.0;
    for (int nmax : {4, 8, 12}) {
        auto t = t45_bands(nmax);
        double partial = 0.0;
        for (int n = 1; n <= nmax; ++n) partial += t.band_gap_sum(n, 0.8);
        c.require(partial > prev, "monotone growth");
        prev = partial;
    }

    // the gap-sequence profile is defined for r below half the largest gap
    // (the index rule needs 2r < a_1); restrict the dyadic grid to that range
    double a1 = t12.census().classes.front().length;
    std::vector<double> grid;
    for (int n = 1; n <= 12; ++n)
        if (t12.delta(n) / 2.0 < a1 / 2.0) grid.push_back(t12.delta(n) / 2.0);
    c.require(grid.size() >= 5, "resolved profile range");
    auto prof = minkowski_profile(t12.census(), 0.8, grid);
    for (std::size_t i = 0; i + 1 < prof.points.size(); ++i)
        c.require(prof.points[i + 1].ratio < prof.points[i].ratio, "profile decreasing");
    c.detail << " S=" << weighted << " G45=" << g45 << " profile " << prof.points.front().ratio
             << " -> " << prof.points.back().ratio << " over " << grid.size() << " scales";
}

void criterion_9(Check& c) {
    double D = 1.0;
    auto conv = sumint_check(
        [D](double x) { return std::pow(x, -0.25) - std::pow(D, -0.25); }, D, 1.5, 20);
    c.require(conv.verdicts_agree && conv.verdict_values == Verdict::bounded, "convergent case");
    c.require(conv.sandwich_ok, "sandwich (convergent)");
    auto div = sumint_check(
        [D](double x) { return std::pow(x, -2.0) - std::pow(D, -2.0); }, D, 1.5, 20);
    c.require(div.verdicts_agree && div.verdict_values == Verdict::diverging, "divergent case");
    c.require(div.sandwich_ok, "sandwich (divergent)");
    c.detail << " convergent integral ~" << conv.integral << ", divergent integral "
             << div.integral;
}

void criterion_10(Check& c) {
    PlanarCompactSet F({{-1.0, 0.0}, {1.0, 0.0}});
    Rect window{{-2.75, -2.0}, {2.75, 2.0}};
    double h = 0.005;

    auto low = extract(F, 0.5, window, h);
    c.require(low.component_count == 2, "two components at r=0.5");
    c.require(low.anomalies.empty(), "clean at r=0.5");

    auto mid = extract(F, 1.0, window, h);
    c.require(mid.component_count == 1, "one component at r=1");
    c.require(!mid.anomalies.empty(), "degree-4 contact at r=1");

    auto high = extract(F, 1.5, window, h);
    c.require(high.component_count == 1, "one component at r=1.5");
    c.require(high.anomalies.empty(), "clean at r=1.5");

    auto records = scan_critical(F, {{-2.0, -2.0}, {2.0, 2.0}}, 0.05);
    c.require(records.size() == 1, "single detected critical point");
    if (!records.empty()) {
        c.require(std::abs(records[0].value - 1.0) <= h, "anomaly level at the critical value");
        bool near_origin = false;
        for (const auto& a : mid.anomalies)
            if (norm(a - Vec2{0.0, 0.0}) <= h) near_origin = true;
        c.require(near_origin, "anomaly located at the contact point");
    }
    c.detail << " components {" << low.component_count << "," << mid.component_count << ","
             << high.component_count << "}, " << mid.anomalies.size() << " anomaly node(s)";
}

void criterion_11(Check& c) {
    auto tf = tf_assembly(4);
    auto fc = build_ferry_set(tf.skeleton);
    double y = 1.25;  // max of block 3: a left-accumulation point
    auto w = tf_witness(tf.skeleton, y, 16.0);
    c.require(w.has_value() && w->ratio >= w->threshold, "gap witness at y");
    Vec2 focus{fc.g_of(y), 0.0};
    for (double rho : {0.1, 0.05, 0.02}) {
        double h = rho / 1250.0;
        Rect window{{focus.x - rho, focus.y - rho}, {focus.x + rho, focus.y + rho}};
        auto curves = extract(fc.F, y, window, h);
        auto diag = manifold_diagnostic(curves, focus, rho);
        c.require(diag.focus_on_curve, "focus on the level curve");
        c.require(diag.extra_components >= 1,
                  "extra component in window " + std::to_string(rho));
        c.detail << " [rho=" << rho << ": " << diag.extra_components << " extra]";
    }
}

void criterion_12(Check& c) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double kappa = 1.0;

    double worst = 0.0;
    std::vector<double> t_grid{1e-4};
    for (int i = 0; i < 1000; ++i) {
        Vec2 zx{0.6 * u(rng) - 0.3, 0.6 * u(rng) - 0.3};
        auto x = hpoint(zx, kappa);
        std::vector<HPoint> F;
        int m = 1 + int(u(rng) * 3.0);
        for (int s = 0; s < m; ++s) {
            double ang = 2 * M_PI * u(rng);
            F.push_back(exp_map(x, {std::cos(ang), std::sin(ang)}, 0.8 + 0.7 * u(rng)));
        }
        double va = 2 * M_PI * u(rng);
        auto rep = cosine_formula_check(F, x, {std::cos(va), std::sin(va)}, t_grid);
        worst = std::max(worst, rep.max_error);
    }
    c.require(worst <= 1e-4, "cosine finite differences");
    c.detail << " fd max error " << std::scientific << worst;

    std::size_t violations = 0, pairs = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<HPoint> F;
        std::vector<HPoint> centers;
        for (int k = 0; k < 3; ++k) {
            Vec2 zx{0.3 * u(rng) - 0.15, 0.3 * u(rng) - 0.15};
            auto x = hpoint(zx, kappa);
            double r = 0.1 + 0.2 * u(rng);
            double base = 2 * M_PI * u(rng);
            int m = 2 + int(u(rng) * 2.0);
            for (int i = 0; i < m; ++i) {
                double ang = base + 2 * M_PI * i / m;
                F.push_back(exp_map(x, {std::cos(ang), std::sin(ang)}, r));
            }
            centers.push_back(x);
        }
        std::vector<HPoint> verified;
        for (const auto& x : centers)
            if (hyp_critical(F, x, 1e-7).critical) verified.push_back(x);
        if (verified.size() < 2) continue;
        double R = 0.0;
        for (const auto& a : verified) {
            R = std::max(R, hyp_distance_to_set(F, a));
            for (const auto& b : verified) R = std::max(R, hdist(a, b));
        }
        auto rep = riemannian_ferry_check(F, verified, 2.0 * R, kappa);
        violations += rep.violations;
        pairs += rep.pairs;
    }
    c.require(pairs > 0 && violations == 0, "quadratic control violations");
    c.detail << "; " << pairs << " critical pairs, 0 violations";

    double kappa_flat = 1e3;
    double worst_resid = 0.0;
    int agree = 0, total = 0;
    std::mt19937_64 rng2(121);
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<Vec2> flat;
        for (int i = 0; i < 6; ++i) flat.push_back({v(rng2), v(rng2)});
        Vec2 xf{0.5 * v(rng2), 0.5 * v(rng2)};
        PlanarCompactSet Fe(flat);
        if (distance(Fe, xf) < 0.05) continue;
        std::vector<HPoint> Fh;
        for (const auto& s : flat) Fh.push_back(from_flat(s, kappa_flat));
        auto he = is_critical(Fe, xf, 1e-9);
        auto hh = hyp_critical(Fh, from_flat(xf, kappa_flat), 1e-9);
        worst_resid = std::max(worst_resid, std::abs(he.second - hh.residual));
        agree += int(he.first == hh.critical);
        ++total;
    }
    c.require(total > 0 && agree == total, "flat-limit verdict agreement");
    c.require(worst_resid <= 1e-6, "flat-limit residual agreement");
    c.detail << "; flat-limit residual diff " << worst_resid;
}

void criterion_13(Check& c) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    std::vector<double> pts;
    while (pts.size() < 10) {
        double x = u(rng);
        bool ok = true;
        for (double p : pts)
            if (std::abs(p - x) < 0.02) ok = false;
        if (ok) pts.push_back(x);
    }
    auto A = CompactRealSet::from_points(std::move(pts));
    auto fc = build_ferry_set(A);
    auto trip = odrn_round_trip(A, 0.5, fc.F.diameter() / 500.0, 1e-6);
    c.require(trip.superset, "recovered superset of the target");
    c.require(trip.recovered_bt, "recovered set BT_{1/2}");
    c.detail << " worst recovery error " << std::scientific << trip.worst_error << ", "
             << trip.recovered.size() << " values recovered";
}

void criterion_14(Check& c) {
    auto rep = konmn_bound(1.0, 0.5, 1.0, CompactRealSet());
    c.require(rep.p_decimal == "20000000000000000000000003", "exact count");
    std::size_t excluded = 0;
    for (const auto& [cv, D] : g_cv_sets) {
        auto r = konmn_bound(D, D / 4.0, D / 2.0, cv);
        if (r.excluded) ++excluded;
    }
    c.require(excluded == g_cv_sets.size(), "exclusion on computed cv sets");
    c.detail << " p = " << rep.p_decimal << ", " << excluded << "/" << g_cv_sets.size()
             << " cv sets excluded";
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        double budget_s;
        std::function<void(Check&)> run;
    };
    const std::vector<Entry> entries = {
        {1, "gap-sum closed form for deep Cantor truncations", 1.0, criterion_1},
        {2, "parallel-measure routes agree to 1e-12", 1.0, criterion_2},
        {3, "dimension estimates within 0.05", 5.0, criterion_3},
        {4, "exact criticality of constructed targets", 10.0, criterion_4},
        {5, "quadratic pairwise control, zero violations", 60.0, criterion_5},
        {6, "dyadic packing counts under 1e5 D^2", 60.0, criterion_6},
        {7, "local value gap sums under 6e4 sqrt(delta)", 30.0, criterion_7},
        {8, "dyadic-block family: series, growth, profile", 10.0, criterion_8},
        {9, "series/integral equivalence verdicts", 1.0, criterion_9},
        {10, "level-set topology across the critical value", 5.0, criterion_10},
        {11, "nested extra components at the witness point", 120.0, criterion_11},
        {12, "hyperbolic derivative, control, flat limit", 30.0, criterion_12},
        {13, "target recovery round trip", 60.0, criterion_13},
        {14, "exact unattainable-count arithmetic", 1.0, criterion_14},
    };

    int failures = 0;
    for (const auto& e : entries) {
        Check c;
        auto start = std::chrono::steady_clock::now();
        try {
            e.run(c);
        } catch (const std::exception& ex) {
            c.pass = false;
            c.detail << " exception: " << ex.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= e.budget_s) {
            c.pass = false;
            c.detail << " over budget " << e.budget_s << "s";
        }
        std::printf("criterion %2d: %s  [%6.2fs] %s -%s\n", e.id, c.pass ? "PASS" : "FAIL",
                    elapsed, e.name, c.detail.str().c_str());
        std::fflush(stdout);
        if (!c.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
