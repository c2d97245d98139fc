#include "critfield/setgen.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace critfield {
namespace {

void check_cantor_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("cantor: alpha must lie in (0, 1/2)");
}

constexpr std::uint64_t kMaxExplicitPoints = std::uint64_t(1) << 24;

}  // namespace

CantorSet cantor(double alpha, int depth) {
    check_cantor_alpha(alpha);
    if (depth < 1) throw std::invalid_argument("cantor: depth must be >= 1");

    CantorSet out;
    out.alpha = alpha;
    out.depth = depth;
    if (depth <= CantorSet::kMaxExplicitDepth) {
        std::vector<Interval> ivs{{0.0, 1.0}};
        for (int level = 0; level < depth; ++level) {
            std::vector<Interval> next;
            next.reserve(ivs.size() * 2);
            for (const auto& iv : ivs) {
                double len = iv.length();
                next.push_back({iv.lo, iv.lo + alpha * len});
                next.push_back({iv.hi - alpha * len, iv.hi});
            }
            ivs = std::move(next);
        }
        out.set = CompactRealSet::from_intervals(std::move(ivs));
    }
    return out;
}

GapCensus CantorSet::census() const {
    GapCensus c;
    c.set_min = 0.0;
    c.set_max = 1.0;
    c.lebesgue = measure();
    double len = 1.0 - 2.0 * alpha;
    std::uint64_t count = 1;
    for (int j = 1; j <= depth; ++j) {
        c.classes.push_back({len, count});
        len *= alpha;
        count *= 2;
    }
    c.normalize();
    return c;
}

GapCensus CantorSet::endpoint_census() const {
    GapCensus c = census();
    c.lebesgue = 0.0;
    c.classes.push_back({std::pow(alpha, depth), std::uint64_t(1) << depth});
    c.normalize();
    return c;
}

double CantorSet::tail_gap_sum(double s) const {
    if (!(s > 0)) throw std::invalid_argument("tail_gap_sum: s must be positive");
    double ratio = 2.0 * std::pow(alpha, s);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return std::pow(1.0 - 2.0 * alpha, s) * std::pow(ratio, depth) / (1.0 - ratio);
}

double CantorSet::measure() const { return std::pow(2.0 * alpha, depth); }

double cantor_gap_sum_half_closed(double alpha) {
    check_cantor_alpha(alpha);
    return std::sqrt(1.0 - 2.0 * alpha) / (1.0 - 2.0 * std::sqrt(alpha));
}

double tf_block_alpha(int n) {
    if (n < 1) throw std::invalid_argument("tf block index must be >= 1");
    return 0.25 - 1.0 / (5.0 * n);
}

TfAssembly tf_assembly(int n_max, const std::function<int(int)>& depth_rule) {
    if (n_max < 1) throw std::invalid_argument("tf_assembly: n_max must be >= 1");

    TfAssembly out;
    out.n_max = n_max;
    CompactRealSet acc = CompactRealSet::from_points({1.0, 16.0});
    CompactRealSet skel = acc;
    for (int n = 1; n <= n_max; ++n) {
        double alpha = tf_block_alpha(n);
        int depth = depth_rule ? depth_rule(n) : n + 8;
        if (depth < 1) throw std::invalid_argument("tf_assembly: depth rule must be >= 1");
        out.alphas.push_back(alpha);
        out.depths.push_back(depth);

        CantorSet block = cantor(alpha, depth);
        if (!block.has_explicit())
            throw std::invalid_argument("tf_assembly: block depth too large for explicit form");
        double scale = std::pow(2.0, -n);
        CompactRealSet placed = block.set.scale(scale).translate(1.0 + scale);
        acc = acc.unite(placed);
        // per-block endpoints, so points where consecutive blocks touch
        // survive the fat-interval merge
        skel = skel.unite(placed.endpoints());
        // within-block truncation remainder, scaled: gap lengths shrink by
        // 2^-n, so G_{1/2} shrinks by 2^(-n/2)
        out.truncation_tail_half += std::pow(2.0, -0.5 * n) * block.tail_gap_sum(0.5);
    }
    out.set = acc;
    out.skeleton = skel;

    double tail = 0.0;
    for (int n = n_max + 1;; ++n) {
        double term = std::pow(2.0, -0.5 * n) * cantor_gap_sum_half_closed(tf_block_alpha(n));
        tail += term;
        if (term < 1e-18 * (tail + 1.0) || n > 4000) break;
    }
    out.tail_beyond_blocks_half = tail;
    return out;
}

double TfAssembly::block_min(int n) const { return 1.0 + std::pow(2.0, -n); }
double TfAssembly::block_max(int n) const { return 1.0 + std::pow(2.0, -(n - 1)); }

namespace {

std::uint64_t t45_block_count(int n) {
    double delta = std::pow(2.0, -n);
    double raw = std::pow(double(n) * delta, -4.0);
    if (!(raw < 9.0e18)) throw std::invalid_argument("resolution overflow");
    auto k = std::uint64_t(raw) + 1;
    // eq. invariant checked on construction: (n delta_n)^-4 <= k_n <= 2 (n delta_n)^-4
    if (!(raw <= double(k) && double(k) <= 2.0 * raw))
        throw std::logic_error("t45: block count outside its analytic bracket");
    return k;
}

T45Set t45_build(int n_max, bool materialize) {
    if (n_max < 1) throw std::invalid_argument("t45: n_max must be >= 1");
    T45Set out;
    out.n_max = n_max;
    std::uint64_t total = 1;
    for (int n = 1; n <= n_max; ++n) {
        out.k.push_back(t45_block_count(n));
        total += out.k.back() + 1;
        if (materialize && total > kMaxExplicitPoints)
            throw std::invalid_argument("resolution overflow");
    }
    if (materialize) {
        std::vector<double> pts;
        pts.reserve(total);
        pts.push_back(0.0);
        for (int n = 1; n <= n_max; ++n) {
            double delta = out.delta(n);
            auto k = out.k[n - 1];
            double step = delta / (2.0 * double(k));
            for (std::uint64_t i = 0; i <= k; ++i)
                pts.push_back(delta / 2.0 + double(i) * step);
        }
        out.set = CompactRealSet::from_points(std::move(pts));
    }
    return out;
}

}  // namespace

T45Set t45_set(int n_max) { return t45_build(n_max, true); }
T45Set t45_bands(int n_max) { return t45_build(n_max, false); }

double T45Set::delta(int n) const { return std::pow(2.0, -n); }

double T45Set::band_gap_sum(int n, double s) const {
    if (n < 1 || n > n_max) throw std::invalid_argument("t45 band index out of range");
    double delta_n = delta(n);
    auto kn = k[n - 1];
    return double(kn) * std::pow(delta_n / (2.0 * double(kn)), s);
}

GapCensus T45Set::census() const {
    GapCensus c;
    c.set_min = 0.0;
    c.set_max = 0.5;
    c.lebesgue = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        double delta_n = delta(n);
        c.classes.push_back({delta_n / (2.0 * double(k[n - 1])), k[n - 1]});
    }
    c.classes.push_back({delta(n_max) / 2.0, 1});  // gap from {0} to the deepest block
    c.normalize();
    return c;
}

}  // namespace critfield
