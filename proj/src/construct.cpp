#include "critfield/construct.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "critfield/kernel.hpp"

namespace critfield {
namespace {

std::vector<Vec2> ferry_sites(const std::vector<double>& ys, const std::vector<double>& g) {
    std::vector<Vec2> sites;
    sites.reserve(2 * ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        sites.push_back({g[i], ys[i]});
        sites.push_back({g[i], -ys[i]});
    }
    return sites;
}

}  // namespace

FerryConstruction build_ferry_set(const CompactRealSet& K) {
    if (K.empty()) throw std::invalid_argument("empty set");
    if (!K.null_represented())
        throw std::invalid_argument("build_ferry_set: K must be null-represented");
    if (!(K.min() > 0)) throw std::invalid_argument("build_ferry_set: min K must be positive");

    std::vector<double> ys;
    ys.reserve(K.size());
    for (const auto& iv : K.intervals()) ys.push_back(iv.lo);
    double b = ys.back();
    double root2b = std::sqrt(2.0 * b);

    // compensated prefix: g differences of nearby points must stay accurate
    // on representations with many points
    std::vector<double> g(ys.size(), 0.0);
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        double term = root2b * std::sqrt(ys[i] - ys[i - 1]);
        double t = sum + term;
        comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        g[i] = sum + comp;
        if (!(g[i] > g[i - 1]))
            throw std::logic_error("build_ferry_set: g must be strictly increasing");
    }

    FerryConstruction c{K, ys, g, ys.front(), b, PlanarCompactSet(ferry_sites(ys, g))};

    // containment in B(0, b + sqrt(2b) G_{1/2}(K))
    double radius = b + (ys.size() > 1 ? g.back() : 0.0);
    for (const auto& p : c.F.points())
        if (norm(p) > radius * (1.0 + 1e-12))
            throw std::logic_error("build_ferry_set: ball containment violated");

    // v - u <= (2b)^-1 (g(v) - g(u))^2 on the representation (all pairs when
    // small, consecutive plus a sample otherwise)
    auto check_pair = [&](std::size_t i, std::size_t j) {
        double lhs = ys[j] - ys[i];
        double dg = g[j] - g[i];
        if (lhs > dg * dg / (2.0 * b) * (1.0 + 1e-9))
            throw std::logic_error("build_ferry_set: gap-sum inequality violated");
    };
    if (ys.size() <= 1500) {
        for (std::size_t i = 0; i < ys.size(); ++i)
            for (std::size_t j = i + 1; j < ys.size(); ++j) check_pair(i, j);
    } else {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<std::size_t> pick(0, ys.size() - 1);
        for (std::size_t i = 0; i + 1 < ys.size(); ++i) check_pair(i, i + 1);
        for (int n = 0; n < 200000; ++n) {
            std::size_t i = pick(rng), j = pick(rng);
            if (i < j) check_pair(i, j);
        }
    }
    return c;
}

double FerryConstruction::g_of(double y) const {
    auto it = std::lower_bound(ys.begin(), ys.end(), y);
    if (it == ys.end() || *it != y)
        throw std::invalid_argument("g_of: y is not a representation point");
    return g[std::size_t(it - ys.begin())];
}

ProjectionCheck projection_check(const FerryConstruction& c, double v) {
    double gv = c.g_of(v);
    Vec2 q{gv, 0.0};
    ProjectionCheck out;
    // squared comparisons: |q - (g(v), +-v)|^2 = v*v exactly
    double vv = v * v;
    double other_sq = std::numeric_limits<double>::infinity();
    bool target_seen = false;
    for (const auto& p : c.F.points()) {
        double dsq = norm_sq(q - p);
        if (p.x == gv && std::abs(p.y) == v) {
            target_seen = true;
            if (dsq != vv) return out;
        } else {
            other_sq = std::min(other_sq, dsq);
        }
    }
    out.margin = std::sqrt(other_sq) - v;
    out.ok = target_seen && (c.ys.size() == 1 || other_sq > vv);
    return out;
}

bool exterior_check(const FerryConstruction& c, double v, double z) {
    double gv = c.g_of(v);
    if (!(z > gv)) throw std::invalid_argument("exterior_check: need z > g(v)");
    double d = std::sqrt(kernel::min_dist_sq(c.F.sites(), z, 0.0));
    return d > v;
}

std::optional<TfWitness> tf_witness(const CompactRealSet& K, double y, double b,
                                    int max_neighbors) {
    if (K.empty()) throw std::invalid_argument("empty set");
    std::vector<double> pts;
    pts.reserve(K.size() * 2);
    for (const auto& iv : K.intervals()) {
        pts.push_back(iv.lo);
        if (!iv.degenerate()) pts.push_back(iv.hi);
    }
    auto it = std::lower_bound(pts.begin(), pts.end(), y);
    if (it == pts.end() || *it != y)
        throw std::invalid_argument("tf_witness: y is not a representation point");
    std::size_t yi = std::size_t(it - pts.begin());

    std::optional<TfWitness> best;
    double best_gap = 0.0;
    double gap_lo = 0.0, gap_hi = 0.0;
    // walk left neighbors from the closest, tracking the largest gap in (x, y)
    for (int k = 1; k <= max_neighbors && k <= int(yi); ++k) {
        std::size_t xi = yi - std::size_t(k);
        double glen = pts[xi + 1] - pts[xi];
        if (glen > best_gap) {
            best_gap = glen;
            gap_lo = pts[xi];
            gap_hi = pts[xi + 1];
        }
        double x = pts[xi];
        double needed = (4.0 * y / b) * (y - x);
        if (best_gap >= needed && best_gap > 0.0) {
            TfWitness w;
            w.x = x;
            w.gap = {gap_lo, gap_hi};
            w.ratio = best_gap / (y - x);
            w.threshold = 4.0 * y / b;
            best = w;
            break;  // deepest witness: the closest x that works
        }
    }
    return best;
}

Assembly assemble_translates(std::span<const TranslatePart> parts, AssembleMode mode,
                             std::optional<Rect> rect) {
    if (parts.empty()) throw std::invalid_argument("assemble_translates: no parts");

    std::vector<std::size_t> order(parts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::vector<Vec2> centers(parts.size());
    if (mode == AssembleMode::bounded) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return parts[a].delta > parts[b].delta;
        });
        // greedy shelf packing of disjoint balls B(c, 9 delta)
        double total_area = 0.0;
        for (const auto& p : parts) {
            double r = 9.0 * p.delta;
            total_area += (2 * r) * (2 * r);
        }
        Rect box = rect.value_or(Rect{{0.0, 0.0},
                                      {2.5 * std::sqrt(total_area), 2.5 * std::sqrt(total_area)}});
        double x = box.lo.x, y = box.lo.y, shelf = 0.0;
        for (std::size_t idx : order) {
            double r = 9.0 * parts[idx].delta;
            if (x + 2 * r > box.hi.x) {  // next shelf
                x = box.lo.x;
                y += shelf;
                shelf = 0.0;
            }
            if (x + 2 * r > box.hi.x || y + 2 * r > box.hi.y)
                throw std::invalid_argument(
                    "assemble_translates: packing failed; required area >= " +
                    std::to_string(total_area));
            centers[idx] = {x + r, y + r};
            x += 2 * r;
            shelf = std::max(shelf, 2 * r);
        }
    } else {
        double max_diam = 0.0;
        for (const auto& p : parts) max_diam = std::max(max_diam, p.part.diameter());
        double spacing = 4.0 * max_diam + 1.0;
        double cursor = 0.0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            Rect bb = parts[i].part.bounding_box();
            centers[i] = {cursor - bb.lo.x, -bb.lo.y};
            cursor += (bb.hi.x - bb.lo.x) + spacing;
        }
    }

    std::vector<Vec2> pts;
    std::vector<Segment> segs;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        PlanarCompactSet moved = parts[i].part.translated(centers[i]);
        pts.insert(pts.end(), moved.points().begin(), moved.points().end());
        segs.insert(segs.end(), moved.segments().begin(), moved.segments().end());
    }

    Assembly out{PlanarCompactSet(std::move(pts), std::move(segs)), centers, {}, 0.0, false};
    for (const auto& p : parts) {
        out.deltas.push_back(p.delta);
        out.guard_area += 81.0 * M_PI * p.delta * p.delta;
    }

    // locality of level sets: inside B(c_i, 7 delta_i), any point with
    // d_{part_i + c_i} <= delta_i sees the same distance from the whole set
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    out.locality_verified = true;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (mode == AssembleMode::bounded && parts[i].delta <= 0) continue;
        PlanarCompactSet moved = parts[i].part.translated(centers[i]);
        Rect bb = moved.bounding_box();
        Vec2 probe_center = mode == AssembleMode::bounded
                                ? centers[i]
                                : Vec2{(bb.lo.x + bb.hi.x) / 2, (bb.lo.y + bb.hi.y) / 2};
        double radius = mode == AssembleMode::bounded ? 7.0 * parts[i].delta
                                                      : parts[i].part.diameter() + 1.0;
        double limit = mode == AssembleMode::bounded ? parts[i].delta
                                                     : parts[i].part.diameter();
        for (int probe = 0; probe < 200; ++probe) {
            Vec2 q = probe_center + radius * Vec2{u(rng), u(rng)};
            double dp = std::sqrt(kernel::min_dist_sq(moved.sites(), q.x, q.y));
            if (dp <= limit) {
                double dw = std::sqrt(kernel::min_dist_sq(out.whole.sites(), q.x, q.y));
                if (dw != dp) out.locality_verified = false;
            }
        }
    }
    return out;
}

}  // namespace critfield
