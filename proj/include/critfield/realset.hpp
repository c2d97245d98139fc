#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace critfield {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    bool degenerate() const { return lo == hi; }
};

/// A compact subset of the line stored as a finite union of disjoint closed
/// intervals, sorted left to right. Points are degenerate intervals. Touching
/// or overlapping intervals are merged on construction, so every gap between
/// consecutive intervals has strictly positive length.
class CompactRealSet {
public:
    CompactRealSet() = default;

    static CompactRealSet from_intervals(std::vector<Interval> intervals);
    static CompactRealSet from_points(std::vector<double> points);

    const std::vector<Interval>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }
    std::size_t size() const { return intervals_.size(); }

    double min() const;  // throws on empty
    double max() const;
    double lebesgue() const;
    bool null_represented() const;
    bool contains(double x) const;

    /// Degenerate set made of every interval endpoint of this set.
    CompactRealSet endpoints() const;
    CompactRealSet intersect(double a, double b) const;
    CompactRealSet unite(const CompactRealSet& other) const;
    CompactRealSet translate(double t) const;
    CompactRealSet scale(double s) const;  // s > 0

private:
    std::vector<Interval> intervals_;
};

/// Bounded components of the complement, sorted left to right.
/// Throws "empty set" on an empty input.
std::vector<Interval> gaps(const CompactRealSet& set);

/// Aggregated gap data of a compact set: (length, count) classes sorted by
/// decreasing length, plus extent and measure. Exact for every interval
/// representation, and constructible analytically for generator truncations
/// far too deep to materialize.
struct GapCensus {
    struct Class {
        double length = 0.0;
        std::uint64_t count = 0;
    };
    std::vector<Class> classes;
    double set_min = 0.0;
    double set_max = 0.0;
    double lebesgue = 0.0;

    static GapCensus of(const CompactRealSet& set);

    std::uint64_t gap_count() const;
    double total_gap_length() const;
    /// Sorts classes by decreasing length and merges exact duplicates.
    void normalize();
};

double gap_sum(const CompactRealSet& set, double alpha);
double gap_sum(const GapCensus& census, double alpha);

struct BtReport {
    bool is_bt = false;
    double lebesgue = 0.0;
    double gap_sum = 0.0;
    double tail_bound = 0.0;
};

/// BT test for a represented set with an optional analytic tail declared by
/// the generator of a truncated infinite set. Finite representations always
/// have finite gap sums; an infinite tail_bound marks a declared divergence.
BtReport is_bt(const CompactRealSet& set, double alpha, double tail_bound = 0.0);
BtReport is_bt(const GapCensus& census, double alpha, double tail_bound = 0.0);

/// Measure of the closed r-parallel set. Evaluated through the gap-sequence
/// formula and cross-checked against the direct fattened-interval union; the
/// two routes must agree to 1e-12 relative.
double parallel_measure(const CompactRealSet& set, double r);
double parallel_measure(const GapCensus& census, double r);

// The two routes, exposed separately for oracle tests.
double parallel_measure_gap_route(const GapCensus& census, double r);
double parallel_measure_direct(const CompactRealSet& set, double r);

struct ProfilePoint {
    double r = 0.0;
    double measure = 0.0;
    double ratio = 0.0;  // measure / r^(1-s)
};

struct MinkowskiProfile {
    double s = 0.0;
    std::vector<ProfilePoint> points;
    double ratio_min = 0.0;
    double ratio_max = 0.0;
};

/// Content profile r -> lambda_1(B_r)/r^(1-s) along a strictly decreasing
/// grid; the min/max over the grid bracket the s-content estimate.
MinkowskiProfile minkowski_profile(const CompactRealSet& set, double s,
                                   std::span<const double> r_grid);
MinkowskiProfile minkowski_profile(const GapCensus& census, double s,
                                   std::span<const double> r_grid);

struct IndexEstimate {
    double index = 0.0;
    double std_error = 0.0;
    std::size_t census_points = 0;
};

/// Estimate of the Besicovitch–Taylor index (= upper Minkowski dimension for
/// compact null sets) as the least-squares slope of log #(gaps >= t) against
/// -log t over the available dyadic range. An estimator, not an exact value;
/// std_error is the fit's slope standard error.
IndexEstimate bt_index_estimate(const CompactRealSet& set);
IndexEstimate bt_index_estimate(const GapCensus& census);

/// Splits K subset of [delta/2, delta] into pieces with G_{1/2} <= 2 sqrt(delta)
/// each, at most G_{1/2}(K)/sqrt(delta) + 1 of them, by the threshold rule
/// t_k = max{t in K : g(t) <= k sqrt(delta)}.
std::vector<CompactRealSet> split_bounded_gapsum(const CompactRealSet& K, double delta);

struct HolderImageBound {
    double bound = 0.0;   // sum |f(a_{i+1}) - f(a_i)|^alpha
    double actual = 0.0;  // G_alpha of the image set
};

HolderImageBound holder_image_bound(std::span<const double> points,
                                    std::span<const double> values, double alpha);

}  // namespace critfield
