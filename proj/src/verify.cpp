#include "critfield/verify.hpp"

#include <gmpxx.h>

#include "critfield/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace critfield {
namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

Verdict verdict_of(double partial, double first_term, double factor) {
    if (first_term <= 0) return Verdict::bounded;
    return partial > factor * first_term ? Verdict::diverging : Verdict::bounded;
}

// Euler-Maclaurin for sum_{i=0}^{m-1} (a + iL)^{3/2}; exact to double
// precision at the counts involved here.
double em_sum_pow32(double a, double L, double m) {
    double b = a + m * L;
    auto F = [](double x) { return 0.4 * x * x * std::sqrt(x); };       // int x^{3/2}
    auto f = [](double x) { return x * std::sqrt(x); };                 // x^{3/2}
    auto fp = [](double x) { return 1.5 * std::sqrt(x); };              // f'
    auto fppp = [](double x) { return 0.375 / (x * std::sqrt(x)); };    // f'''
    return (F(b) - F(a)) / L - (f(b) - f(a)) / 2.0 + L / 12.0 * (fp(b) - fp(a)) -
           L * L * L / 720.0 * (fppp(b) - fppp(a));
}

}  // namespace

SumintReport sumint_check(const std::function<double(double)>& g, double D, double alpha,
                          int N, double threshold_factor) {
    if (!(alpha >= 1.0)) throw std::invalid_argument("sumint_check: alpha must be >= 1");
    if (!(D > 0)) throw std::invalid_argument("sumint_check: D must be positive");
    if (std::abs(g(D)) > 1e-12) throw std::invalid_argument("sumint_check: g(D) must be 0");

    SumintReport rep;
    rep.alpha = alpha;
    rep.N = N;

    std::vector<double> delta(N + 2), gv(N + 2);
    for (int k = 0; k <= N + 1; ++k) {
        delta[k] = D * std::pow(2.0, -k);
        gv[k] = g(delta[k]);
        if (k > 0 && gv[k] < gv[k - 1] - 1e-12 * std::abs(gv[k - 1]))
            throw std::invalid_argument("non-monotone samples");
    }

    double first_value = 0.0, first_diff = 0.0, first_int = 0.0;
    rep.sandwich_ok = true;
    for (int k = 0; k <= N; ++k) {
        double term_value = gv[k] * std::pow(delta[k], alpha);
        double term_diff = (gv[k + 1] - gv[k]) * std::pow(delta[k], alpha);
        double I_k = simpson([&](double x) { return g(x) * std::pow(x, alpha - 1.0); },
                             delta[k + 1], delta[k], 512);
        rep.sum_values += term_value;
        rep.sum_differences += term_diff;
        rep.integral += I_k;
        if (first_value == 0.0) first_value = std::abs(term_value);
        if (first_diff == 0.0) first_diff = std::abs(term_diff);
        if (first_int == 0.0) first_int = std::abs(I_k);

        double lo = std::pow(2.0, -alpha) * gv[k] * std::pow(delta[k], alpha);
        double hi = std::pow(2.0, alpha - 1.0) * gv[k + 1] * std::pow(delta[k + 1], alpha);
        double slack = 1e-6 * std::max({1.0e-300, lo, hi, std::abs(I_k)});
        if (!(lo <= I_k + slack && I_k <= hi + slack)) rep.sandwich_ok = false;
    }

    rep.threshold = threshold_factor;
    rep.verdict_values = verdict_of(rep.sum_values, first_value, threshold_factor);
    rep.verdict_differences = verdict_of(rep.sum_differences, first_diff, threshold_factor);
    rep.verdict_integral = verdict_of(rep.integral, first_int, threshold_factor);
    rep.verdicts_agree = rep.verdict_values == rep.verdict_differences &&
                         rep.verdict_differences == rep.verdict_integral;
    return rep;
}

namespace {

// g(r) = G_{1/2}(K cap [r, inf)) = sum over gaps with left endpoint >= r.
double gap_sum_right_of(const std::vector<Interval>& gap_list, double r) {
    double s = 0.0;
    for (const auto& gp : gap_list)
        if (gp.lo >= r) s += std::sqrt(gp.length());
    return s;
}

bool chardon_consistency(const std::vector<double>& delta, const std::vector<double>& terms,
                         double S, double integral, double D, double total_half,
                         const std::function<double(double)>& g_of) {
    // S <= sum (g(d_{k+1})-g(d_k)) d_k^{3/2} <= S + sqrt(D) sum d_k^{3/2},
    // and the dyadic series/integral sandwich brackets the integral.
    (void)terms;
    double s_diff = 0.0, lower = 0.0, upper = 0.0, corr = 0.0;
    for (std::size_t k = 0; k + 1 < delta.size(); ++k) {
        double diff = g_of(delta[k + 1]) - g_of(delta[k]);
        s_diff += diff * std::pow(delta[k], 1.5);
        corr += std::sqrt(D) * std::pow(delta[k], 1.5);
        lower += std::pow(2.0, -1.5) * g_of(delta[k]) * std::pow(delta[k], 1.5);
        upper += std::pow(2.0, 0.5) * g_of(delta[k + 1]) * std::pow(delta[k + 1], 1.5);
    }
    double slack = 1e-9 * std::max(1.0, S + corr);
    bool band_ok = S <= s_diff + slack && s_diff <= S + corr + slack;
    // deepest-band remainder of the integral
    double tail = total_half * (2.0 / 3.0) * std::pow(delta.back(), 1.5);
    bool int_ok = integral >= lower - slack && integral <= upper + tail + slack;
    return band_ok && int_ok;
}

}  // namespace

ChardonReport chardon_series(const CompactRealSet& K, double D) {
    if (K.empty()) throw std::invalid_argument("empty set");
    if (K.min() < 0 || K.max() > D)
        throw std::invalid_argument("chardon_series: K not contained in [0, D]");

    ChardonReport rep;
    std::vector<Interval> gap_list = K.size() > 1 ? gaps(K) : std::vector<Interval>{};

    double min_pos = std::numeric_limits<double>::infinity();
    for (const auto& iv : K.intervals())
        if (iv.hi > 0) min_pos = std::min(min_pos, iv.lo > 0 ? iv.lo : iv.hi);

    std::vector<double> delta{D};
    for (int n = 0; n < 600; ++n) {
        double dn = D * std::pow(2.0, -n);
        double dn1 = dn / 2.0;
        CompactRealSet band = K.intersect(dn1, dn);
        double term = band.size() >= 2 ? gap_sum(band, 0.5) : 0.0;
        rep.band_terms.push_back(term);
        rep.S += std::pow(dn, 1.5) * term;
        delta.push_back(dn1);
        ++rep.bands;
        if (dn1 < min_pos) break;
    }

    for (const auto& gp : gap_list)
        rep.integral += std::sqrt(gp.length()) * (2.0 / 3.0) * std::pow(std::max(gp.lo, 0.0), 1.5);

    double total_half = K.size() >= 2 ? gap_sum(K, 0.5) : 0.0;
    rep.consistent = chardon_consistency(
        delta, rep.band_terms, rep.S, rep.integral, D, total_half,
        [&](double r) { return gap_sum_right_of(gap_list, r); });
    return rep;
}

ChardonReport chardon_series(const T45Set& t45, double D) {
    if (D != 1.0) throw std::invalid_argument("t45 chardon check uses D = 1");
    ChardonReport rep;
    // band n = [2^-(n+1), 2^-n] is exactly block n; band 0 holds only {1/2}
    rep.band_terms.push_back(0.0);
    std::vector<double> delta{1.0, 0.5};
    for (int n = 1; n <= t45.n_max; ++n) {
        double term = t45.band_gap_sum(n, 0.5);
        rep.band_terms.push_back(term);
        rep.S += std::pow(t45.delta(n), 1.5) * term;
        delta.push_back(t45.delta(n) / 2.0);
    }
    rep.bands = t45.n_max + 1;

    double total_half = 0.0;
    for (int n = 1; n <= t45.n_max; ++n) {
        double L = t45.delta(n) / (2.0 * double(t45.k[n - 1]));
        rep.integral += std::sqrt(L) * (2.0 / 3.0) * em_sum_pow32(t45.delta(n) / 2.0, L,
                                                                 double(t45.k[n - 1]));
        total_half += t45.band_gap_sum(n, 0.5);
    }
    auto g_of = [&](double r) {
        // gaps with left endpoint >= r, analytically per block
        double s = 0.0;
        for (int n = 1; n <= t45.n_max; ++n) {
            double dn = t45.delta(n);
            double L = dn / (2.0 * double(t45.k[n - 1]));
            if (r <= dn / 2.0) {
                s += t45.band_gap_sum(n, 0.5);
            } else if (r < dn) {
                double count = std::floor((dn - r) / L + 1e-9);
                s += count * std::sqrt(L);
            }
        }
        return s;
    };
    rep.consistent = chardon_consistency(delta, rep.band_terms, rep.S, rep.integral, 1.0,
                                         total_half, g_of);
    return rep;
}

DyadicProfile annulus_packing(const PlanarCompactSet& F, double D, int N) {
    if (!(D >= F.diameter() && F.diameter() > 0))
        throw std::invalid_argument("annulus_packing: need D >= diam F > 0");

    DyadicProfile prof;
    prof.D = D;
    prof.N = N;
    prof.bound = 1e5 * D * D;
    prof.covering_verified = true;
    prof.disjointness_verified = true;

    Rect base = F.bounding_box().inflated(1.25 * D);
    for (int n = 0; n <= N; ++n) {
        double dn = D * std::pow(2.0, -n);
        double dn1 = dn / 2.0;
        double sep = dn / 40.0;  // accepted centers pairwise > 2*sep
        double step = sep;       // sample spacing; coverage radius is 5*sep

        // band sampling by quadtree descent on |d - band| vs cell radius
        std::vector<Vec2> samples;
        struct Cell {
            Vec2 c;
            double half;
        };
        std::vector<Cell> stack{{ {(base.lo.x + base.hi.x) / 2, (base.lo.y + base.hi.y) / 2},
                                 std::max(base.width(), base.height()) / 2}};
        while (!stack.empty()) {
            Cell cell = stack.back();
            stack.pop_back();
            double d = distance(F, cell.c);
            double rad = cell.half * std::sqrt(2.0);
            if (d - rad > dn || d + rad < dn1) continue;
            if (cell.half <= step / 2.0) {
                if (d >= dn1 && d <= dn) samples.push_back(cell.c);
                continue;
            }
            double q = cell.half / 2.0;
            stack.push_back({{cell.c.x - q, cell.c.y - q}, q});
            stack.push_back({{cell.c.x + q, cell.c.y - q}, q});
            stack.push_back({{cell.c.x - q, cell.c.y + q}, q});
            stack.push_back({{cell.c.x + q, cell.c.y + q}, q});
        }
        std::sort(samples.begin(), samples.end(), [](Vec2 a, Vec2 b) {
            return a.x < b.x || (a.x == b.x && a.y < b.y);
        });

        // greedy maximal 2*sep-separated subset via a spatial hash
        double cell_size = 2.0 * sep;
        std::unordered_map<std::int64_t, std::vector<Vec2>> grid;
        auto key_of = [&](std::int64_t gx, std::int64_t gy) { return gx * 1000003 + gy; };
        auto cell_of = [&](Vec2 p) {
            return std::pair<std::int64_t, std::int64_t>(std::int64_t(std::floor(p.x / cell_size)),
                                                         std::int64_t(std::floor(p.y / cell_size)));
        };
        auto has_close = [&](Vec2 p, double radius, int range) {
            auto [gx, gy] = cell_of(p);
            for (std::int64_t dx = -range; dx <= range; ++dx)
                for (std::int64_t dy = -range; dy <= range; ++dy) {
                    auto it = grid.find(key_of(gx + dx, gy + dy));
                    if (it == grid.end()) continue;
                    for (const auto& q : it->second)
                        if (dist(p, q) <= radius) return true;
                }
            return false;
        };
        std::vector<Vec2> accepted;
        for (const auto& p : samples) {
            if (has_close(p, 2.0 * sep, 2)) continue;
            auto [gx, gy] = cell_of(p);
            grid[key_of(gx, gy)].push_back(p);
            accepted.push_back(p);
        }

        // covering: every band sample within dn/8 = 5*sep of an accepted center
        double cover = dn / 8.0;
        int cover_range = int(std::ceil(cover / cell_size)) + 1;
        for (const auto& p : samples) {
            if (!has_close(p, cover, cover_range)) {
                prof.covering_verified = false;
                break;
            }
        }
        // disjointness of the sep-balls: no other accepted center within 2*sep
        for (const auto& p : accepted) {
            auto [gx, gy] = cell_of(p);
            int close = 0;
            for (std::int64_t dx = -2; dx <= 2 && close < 2; ++dx)
                for (std::int64_t dy = -2; dy <= 2; ++dy) {
                    auto it = grid.find(key_of(gx + dx, gy + dy));
                    if (it == grid.end()) continue;
                    for (const auto& q : it->second)
                        if (dist(p, q) <= 2.0 * sep && ++close >= 2) break;
                }
            if (close >= 2) {
                prof.disjointness_verified = false;
                break;
            }
        }

        prof.delta.push_back(dn);
        prof.p.push_back(accepted.size());
        prof.weighted.push_back(double(accepted.size()) * dn * dn);
        prof.weighted_sum += prof.weighted.back();
    }
    return prof;
}

MkrbProfile mkrb_profile(const PlanarCompactSet& F, std::span<const double> r_grid,
                         double box_side, double scan_h, double tol) {
    for (std::size_t i = 0; i + 1 < r_grid.size(); ++i)
        if (!(r_grid[i] < r_grid[i + 1]))
            throw std::invalid_argument("mkrb_profile: r_grid must be strictly increasing");

    double diam = F.diameter();
    Rect window = F.bounding_box().inflated(diam > 0 ? diam : 1.0);
    ScanOptions opt;
    opt.tol = tol;
    auto records = scan_critical(F, window, scan_h, opt);

    MkrbProfile prof;
    prof.box_side = box_side;
    prof.records = records.size();
    for (double r : r_grid) {
        std::unordered_set<std::int64_t> boxes;
        for (const auto& rec : records) {
            if (rec.value <= r) continue;
            auto bx = std::int64_t(std::floor(rec.location.x / box_side));
            auto by = std::int64_t(std::floor(rec.location.y / box_side));
            boxes.insert(bx * 1000003 + by);
        }
        prof.h_of_r.emplace_back(r, double(boxes.size()) * box_side);
    }
    for (std::size_t i = 0; i + 1 < prof.h_of_r.size(); ++i)
        prof.integral += 0.5 * (prof.h_of_r[i].second + prof.h_of_r[i + 1].second) *
                         (prof.h_of_r[i + 1].first - prof.h_of_r[i].first);
    return prof;
}

NakouliReport nakouli_bound_check(const PlanarCompactSet& F, Vec2 a, double scan_h, double tol) {
    NakouliReport rep;
    rep.delta = distance(F, a);
    if (!(rep.delta > 0))
        throw std::invalid_argument("nakouli_bound_check: d_F(a) must be positive");
    rep.bound = 6e4 * std::sqrt(rep.delta);

    double r = rep.delta / 3.0;
    Rect window{{a.x - r, a.y - r}, {a.x + r, a.y + r}};
    ScanOptions opt;
    opt.tol = tol;
    auto records = scan_critical(F, window, scan_h, opt);
    std::vector<double> values;
    for (const auto& rec : records)
        if (dist(rec.location, a) <= r) values.push_back(rec.value);
    rep.records = values.size();
    if (values.size() >= 2)
        rep.value_gap_sum = gap_sum(CompactRealSet::from_points(std::move(values)), 0.5);
    rep.pass = rep.value_gap_sum <= rep.bound;
    rep.margin = rep.value_gap_sum > 0 ? rep.bound / rep.value_gap_sum
                                       : std::numeric_limits<double>::infinity();
    return rep;
}

KonmnReport konmn_bound(double D, double alpha, double beta, const CompactRealSet& cv) {
    if (!(0 < alpha && alpha < beta)) throw std::invalid_argument("konmn: need 0 < alpha < beta");
    if (!(D > 0)) throw std::invalid_argument("konmn: D must be positive");

    KonmnReport rep;
    mpf_set_default_prec(512);
    mpf_class ten25(mpz_class("10000000000000000000000000"));
    mpf_class Df(D), af(alpha), bf(beta);
    mpf_class value = ten25 * Df * Df * Df * Df / ((bf - af) * sqrt(bf * bf * bf));
    mpz_class p_int;
    mpz_set_f(p_int.get_mpz_t(), mpf_class(floor(value)).get_mpf_t());
    p_int += 3;
    rep.p_decimal = p_int.get_str();

    rep.band_bound = 1e10 * D * D;
    // forced G_{1/2}(P) lower bound: 8^-1 sqrt(p-1) sqrt(beta-alpha) beta^{3/2}
    mpf_class forced = sqrt(mpf_class(p_int - 1)) * sqrt(bf - af) * sqrt(bf * bf * bf) / 8;
    rep.forced_lhs = forced.get_d();

    // the band [delta_{n+1}, delta_n] holding [c,d], per the n-selection rule
    double beta_c = std::min(beta, D);
    int k = 0;
    while (D * std::pow(2.0, -(k + 1)) >= beta_c) ++k;
    double dk1 = D * std::pow(2.0, -(k + 1));
    int n = (beta_c - dk1 >= (beta_c - alpha) / 4.0) ? k : k + 1;
    double dn = D * std::pow(2.0, -n);

    double band_half = 0.0;
    if (!cv.empty()) {
        CompactRealSet band = cv.intersect(dn / 2.0, dn);
        if (band.size() >= 2) band_half = gap_sum(band, 0.5);
    }
    rep.band_value = band_half * std::pow(dn, 1.5);
    rep.excluded = rep.band_value <= rep.band_bound && rep.forced_lhs > rep.band_bound;
    return rep;
}

std::vector<PorosityPoint> porosity_probe(const CompactRealSet& cv,
                                          std::span<const double> r_grid) {
    std::vector<PorosityPoint> out;
    for (double r : r_grid) {
        if (!(r > 0)) throw std::invalid_argument("porosity_probe: r must be positive");
        double gamma = 0.0;
        double cursor = 0.0;  // left end of the current complement component
        if (!cv.empty()) {
            for (const auto& iv : cv.intervals()) {
                if (iv.lo >= r) break;
                if (iv.lo > cursor) gamma = std::max(gamma, iv.lo - cursor);
                cursor = std::max(cursor, std::min(iv.hi, r));
            }
        }
        gamma = std::max(gamma, r - cursor);
        out.push_back({r, gamma, gamma / std::pow(r, 5.0)});
    }
    return out;
}

OdrnRoundTrip odrn_round_trip(const CompactRealSet& A, double eps, double h, double tol) {
    OdrnRoundTrip out;
    FerryConstruction c = build_ferry_set(A);
    out.recovered = critical_values(c.F, eps, h);
    out.superset = true;
    for (const auto& iv : A.intervals()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& rec : out.recovered.intervals())
            best = std::min(best, std::abs(rec.lo - iv.lo));
        out.worst_error = std::max(out.worst_error, best);
        if (!(best <= tol)) out.superset = false;
    }
    if (!out.recovered.empty()) out.recovered_bt = is_bt(out.recovered, 0.5).is_bt;
    return out;
}

}  // namespace critfield
