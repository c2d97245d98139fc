#include "critfield/realset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace critfield {
namespace {

// Neumaier compensated summation; keeps the dual-route parallel-measure
// comparison meaningful on representations with millions of intervals.
class KahanSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

void require_nonempty(const CompactRealSet& set) {
    if (set.empty()) throw std::invalid_argument("empty set");
}

struct SlopeFit {
    double slope = 0.0;
    double std_error = 0.0;
};

SlopeFit least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    if (n > 2) {
        double sse = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = y[i] - my - fit.slope * (x[i] - mx);
            sse += e * e;
        }
        fit.std_error = std::sqrt(sse / (double(n - 2) * sxx));
    }
    return fit;
}

}  // namespace

CompactRealSet CompactRealSet::from_intervals(std::vector<Interval> intervals) {
    for (const auto& iv : intervals) {
        if (!(iv.lo <= iv.hi)) throw std::invalid_argument("interval with lo > hi");
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
            throw std::invalid_argument("non-finite interval endpoint");
    }
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    CompactRealSet out;
    for (const auto& iv : intervals) {
        if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi) {
            out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
        } else {
            out.intervals_.push_back(iv);
        }
    }
    return out;
}

CompactRealSet CompactRealSet::from_points(std::vector<double> points) {
    std::vector<Interval> ivs;
    ivs.reserve(points.size());
    for (double p : points) ivs.push_back({p, p});
    return from_intervals(std::move(ivs));
}

double CompactRealSet::min() const {
    if (empty()) throw std::invalid_argument("empty set");
    return intervals_.front().lo;
}

double CompactRealSet::max() const {
    if (empty()) throw std::invalid_argument("empty set");
    return intervals_.back().hi;
}

double CompactRealSet::lebesgue() const {
    KahanSum s;
    for (const auto& iv : intervals_) s.add(iv.length());
    return s.value();
}

bool CompactRealSet::null_represented() const {
    for (const auto& iv : intervals_)
        if (!iv.degenerate()) return false;
    return !empty();
}

bool CompactRealSet::contains(double x) const {
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                               [](double v, const Interval& iv) { return v < iv.lo; });
    if (it == intervals_.begin()) return false;
    --it;
    return x >= it->lo && x <= it->hi;
}

CompactRealSet CompactRealSet::endpoints() const {
    std::vector<double> pts;
    pts.reserve(2 * intervals_.size());
    for (const auto& iv : intervals_) {
        pts.push_back(iv.lo);
        if (!iv.degenerate()) pts.push_back(iv.hi);
    }
    return from_points(std::move(pts));
}

CompactRealSet CompactRealSet::intersect(double a, double b) const {
    if (a > b) throw std::invalid_argument("intersect: a > b");
    std::vector<Interval> out;
    for (const auto& iv : intervals_) {
        double lo = std::max(iv.lo, a);
        double hi = std::min(iv.hi, b);
        if (lo <= hi) out.push_back({lo, hi});
    }
    return from_intervals(std::move(out));
}

CompactRealSet CompactRealSet::unite(const CompactRealSet& other) const {
    std::vector<Interval> all = intervals_;
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return from_intervals(std::move(all));
}

CompactRealSet CompactRealSet::translate(double t) const {
    std::vector<Interval> out = intervals_;
    for (auto& iv : out) {
        iv.lo += t;
        iv.hi += t;
    }
    CompactRealSet s;
    s.intervals_ = std::move(out);
    return s;
}

CompactRealSet CompactRealSet::scale(double s) const {
    if (!(s > 0)) throw std::invalid_argument("scale factor must be positive");
    std::vector<Interval> out = intervals_;
    for (auto& iv : out) {
        iv.lo *= s;
        iv.hi *= s;
    }
    CompactRealSet r;
    r.intervals_ = std::move(out);
    return r;
}

std::vector<Interval> gaps(const CompactRealSet& set) {
    require_nonempty(set);
    std::vector<Interval> out;
    const auto& ivs = set.intervals();
    out.reserve(ivs.size() - 1);
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
        out.push_back({ivs[i].hi, ivs[i + 1].lo});
    return out;
}

GapCensus GapCensus::of(const CompactRealSet& set) {
    require_nonempty(set);
    GapCensus c;
    c.set_min = set.min();
    c.set_max = set.max();
    c.lebesgue = set.lebesgue();
    const auto& ivs = set.intervals();
    c.classes.reserve(ivs.size());
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
        c.classes.push_back({ivs[i + 1].lo - ivs[i].hi, 1});
    c.normalize();
    return c;
}

void GapCensus::normalize() {
    std::sort(classes.begin(), classes.end(),
              [](const Class& a, const Class& b) { return a.length > b.length; });
    std::vector<Class> merged;
    for (const auto& cl : classes) {
        if (cl.count == 0) continue;
        if (!(cl.length > 0)) throw std::invalid_argument("census gap length must be positive");
        if (!merged.empty() && merged.back().length == cl.length)
            merged.back().count += cl.count;
        else
            merged.push_back(cl);
    }
    classes = std::move(merged);
}

std::uint64_t GapCensus::gap_count() const {
    std::uint64_t n = 0;
    for (const auto& cl : classes) n += cl.count;
    return n;
}

double GapCensus::total_gap_length() const {
    KahanSum s;
    for (const auto& cl : classes) s.add(double(cl.count) * cl.length);
    return s.value();
}

double gap_sum(const GapCensus& census, double alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    KahanSum s;
    for (const auto& cl : census.classes) s.add(double(cl.count) * std::pow(cl.length, alpha));
    return s.value();
}

double gap_sum(const CompactRealSet& set, double alpha) {
    require_nonempty(set);
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    const auto& ivs = set.intervals();
    KahanSum s;
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
        s.add(std::pow(ivs[i + 1].lo - ivs[i].hi, alpha));
    return s.value();
}

BtReport is_bt(const CompactRealSet& set, double alpha, double tail_bound) {
    require_nonempty(set);
    BtReport rep;
    rep.lebesgue = set.lebesgue();
    rep.gap_sum = gap_sum(set, alpha);
    rep.tail_bound = tail_bound;
    rep.is_bt = set.null_represented() && std::isfinite(rep.gap_sum + tail_bound);
    return rep;
}

BtReport is_bt(const GapCensus& census, double alpha, double tail_bound) {
    BtReport rep;
    rep.lebesgue = census.lebesgue;
    rep.gap_sum = gap_sum(census, alpha);
    rep.tail_bound = tail_bound;
    rep.is_bt = census.lebesgue == 0.0 && std::isfinite(rep.gap_sum + tail_bound);
    return rep;
}

double parallel_measure_gap_route(const GapCensus& census, double r) {
    if (!(r > 0)) throw std::invalid_argument("r must be positive");
    // lambda_1(B_r) = lebesgue + 2r + 2ri + sum of gaps a_j <= 2r, where i
    // counts gaps with a_j > 2r (those survive as shortened gaps of B_r).
    double surviving = 0.0;
    KahanSum absorbed;
    for (const auto& cl : census.classes) {
        if (cl.length > 2 * r)
            surviving += double(cl.count);
        else
            absorbed.add(double(cl.count) * cl.length);
    }
    return census.lebesgue + 2 * r + 2 * r * surviving + absorbed.value();
}

double parallel_measure_direct(const CompactRealSet& set, double r) {
    require_nonempty(set);
    if (!(r > 0)) throw std::invalid_argument("r must be positive");
    const auto& ivs = set.intervals();
    KahanSum total;
    double lo = ivs.front().lo - r;
    double hi = ivs.front().hi + r;
    for (std::size_t i = 1; i < ivs.size(); ++i) {
        double l = ivs[i].lo - r;
        double h = ivs[i].hi + r;
        if (l <= hi) {
            hi = std::max(hi, h);
        } else {
            total.add(hi - lo);
            lo = l;
            hi = h;
        }
    }
    total.add(hi - lo);
    return total.value();
}

double parallel_measure(const GapCensus& census, double r) {
    return parallel_measure_gap_route(census, r);
}

double parallel_measure(const CompactRealSet& set, double r) {
    double via_gaps = parallel_measure_gap_route(GapCensus::of(set), r);
    double direct = parallel_measure_direct(set, r);
    double scale = std::max({std::abs(via_gaps), std::abs(direct), 1e-300});
    if (std::abs(via_gaps - direct) > 1e-12 * scale)
        throw std::logic_error("parallel_measure: gap-sequence and direct routes disagree");
    return direct;
}

namespace {

MinkowskiProfile profile_from_census(const GapCensus& census, double s,
                                     std::span<const double> r_grid) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
    for (std::size_t i = 0; i + 1 < r_grid.size(); ++i)
        if (!(r_grid[i] > r_grid[i + 1]))
            throw std::invalid_argument("r_grid must be strictly decreasing");
    for (double r : r_grid)
        if (!(r > 0)) throw std::invalid_argument("r_grid entries must be positive");

    MinkowskiProfile prof;
    prof.s = s;
    prof.ratio_min = std::numeric_limits<double>::infinity();
    prof.ratio_max = 0.0;
    for (double r : r_grid) {
        double m = parallel_measure_gap_route(census, r);
        double ratio = m / std::pow(r, 1.0 - s);
        prof.points.push_back({r, m, ratio});
        prof.ratio_min = std::min(prof.ratio_min, ratio);
        prof.ratio_max = std::max(prof.ratio_max, ratio);
    }
    return prof;
}

IndexEstimate index_from_census(const GapCensus& census) {
    if (census.gap_count() < 16) throw std::invalid_argument("insufficient resolution");
    double a_max = census.classes.front().length;
    double a_min = census.classes.back().length;

    IndexEstimate est;
    if (a_max <= 2.0 * a_min) {
        est.census_points = 1;
        return est;  // census flat at dyadic resolution: index 0
    }

    // N(t) = #gaps with length >= t over the dyadic grid t_k = a_max 2^-k.
    int levels = int(std::ceil(std::log2(a_max / a_min)));
    std::vector<double> xs, ys;
    xs.reserve(levels + 1);
    for (int k = 0; k <= levels; ++k) {
        double t = a_max * std::pow(2.0, -k);
        t = std::max(t, a_min);
        double count = 0;
        for (const auto& cl : census.classes) {
            if (cl.length >= t)
                count += double(cl.count);
            else
                break;
        }
        xs.push_back(-std::log(t));
        ys.push_back(std::log(count));
        if (t == a_min) break;
    }
    est.census_points = xs.size();
    if (xs.size() < 2) return est;
    SlopeFit fit = least_squares_slope(xs, ys);
    est.index = fit.slope;
    est.std_error = fit.std_error;
    return est;
}

}  // namespace

MinkowskiProfile minkowski_profile(const GapCensus& census, double s,
                                   std::span<const double> r_grid) {
    return profile_from_census(census, s, r_grid);
}

MinkowskiProfile minkowski_profile(const CompactRealSet& set, double s,
                                   std::span<const double> r_grid) {
    require_nonempty(set);
    if (!set.null_represented())
        throw std::invalid_argument("minkowski_profile requires a null-represented set");
    return profile_from_census(GapCensus::of(set), s, r_grid);
}

IndexEstimate bt_index_estimate(const GapCensus& census) { return index_from_census(census); }

IndexEstimate bt_index_estimate(const CompactRealSet& set) {
    require_nonempty(set);
    if (!set.null_represented())
        throw std::invalid_argument("bt_index_estimate requires a null-represented set");
    return index_from_census(GapCensus::of(set));
}

std::vector<CompactRealSet> split_bounded_gapsum(const CompactRealSet& K, double delta) {
    require_nonempty(K);
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    if (K.min() < delta / 2 || K.max() > delta)
        throw std::invalid_argument("split_bounded_gapsum: K not contained in [delta/2, delta]");
    if (!K.null_represented())
        throw std::invalid_argument("split_bounded_gapsum requires a null-represented set");

    double sqrt_delta = std::sqrt(delta);
    double total = gap_sum(K, 0.5);
    if (total <= 2 * sqrt_delta) return {K};

    // g(t) = G_{1/2}(K cap [delta/2, t]) evaluated at the representation points.
    const auto& ivs = K.intervals();
    std::vector<double> pts(ivs.size());
    for (std::size_t i = 0; i < ivs.size(); ++i) pts[i] = ivs[i].lo;
    std::vector<double> g(pts.size(), 0.0);
    for (std::size_t i = 1; i < pts.size(); ++i)
        g[i] = g[i - 1] + std::sqrt(pts[i] - pts[i - 1]);

    std::vector<CompactRealSet> pieces;
    double t_prev = delta / 2;
    std::size_t idx = 0;
    for (int k = 1;; ++k) {
        // t_k = max{t in K : g(t) <= k sqrt(delta)}
        std::size_t j = idx;
        while (j + 1 < pts.size() && g[j + 1] <= double(k) * sqrt_delta) ++j;
        double t_k = pts[j];
        pieces.push_back(K.intersect(t_prev, t_k));
        t_prev = t_k;
        idx = j;
        if (t_k == K.max()) break;
        if (k > int(pts.size()) + 2) throw std::logic_error("split_bounded_gapsum failed to advance");
    }
    return pieces;
}

HolderImageBound holder_image_bound(std::span<const double> points,
                                    std::span<const double> values, double alpha) {
    if (points.size() != values.size() || points.size() < 2)
        throw std::invalid_argument("holder_image_bound: need matching sequences of length >= 2");
    if (!(alpha > 0)) throw std::invalid_argument("alpha must be positive");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i] < points[i + 1]))
            throw std::invalid_argument("points must be strictly increasing");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (sorted[i] == sorted[i + 1])
            throw std::invalid_argument("values must be injective on points");

    HolderImageBound out;
    KahanSum bound;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        bound.add(std::pow(std::abs(values[i + 1] - values[i]), alpha));
    out.bound = bound.value();
    out.actual = gap_sum(CompactRealSet::from_points(std::move(sorted)), alpha);
    return out;
}

}  // namespace critfield
