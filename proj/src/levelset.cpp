#include "critfield/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "critfield/parallel.hpp"

namespace critfield {
namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

LevelCurveSet extract(const PlanarCompactSet& F, double r, Rect window, double h) {
    if (!(r > 0)) throw std::invalid_argument("extract: r must be positive");
    if (!(h > 0)) throw std::invalid_argument("extract: h must be positive");

    const std::size_t nx = std::size_t(std::floor(window.width() / h + 0.5)) + 1;
    const std::size_t ny = std::size_t(std::floor(window.height() / h + 0.5)) + 1;

    auto vx = [&](std::size_t ix) { return window.lo.x + double(ix) * h; };
    auto vy = [&](std::size_t iy) { return window.lo.y + double(iy) * h; };

    // phi = d_F - r on the vertex grid, tile-parallel with exact site pruning
    std::vector<double> phi(nx * ny);
    const int tile = 128;
    std::size_t tiles_x = (nx + tile - 1) / tile;
    std::size_t tiles_y = (ny + tile - 1) / tile;
    parallel_for(tiles_x * tiles_y, [&](std::size_t t) {
        std::size_t tx = t % tiles_x, ty = t / tiles_x;
        std::size_t x0 = tx * tile, x1 = std::min(nx, x0 + tile);
        std::size_t y0 = ty * tile, y1 = std::min(ny, y0 + tile);
        Vec2 c{(vx(x0) + vx(x1 - 1)) / 2, (vy(y0) + vy(y1 - 1)) / 2};
        double tile_radius =
            0.5 * std::hypot(double(x1 - x0) * h, double(y1 - y0) * h) + h;
        PlanarCompactSet local = F.restricted_to_ball(c, tile_radius);
        std::vector<double> qx, qy, out;
        qx.reserve((x1 - x0) * (y1 - y0));
        qy.reserve(qx.capacity());
        for (std::size_t iy = y0; iy < y1; ++iy)
            for (std::size_t ix = x0; ix < x1; ++ix) {
                qx.push_back(vx(ix));
                qy.push_back(vy(iy));
            }
        out.resize(qx.size());
        kernel::min_dist_sq_batch(local.sites(), qx.data(), qy.data(), out.data(), out.size());
        std::size_t k = 0;
        for (std::size_t iy = y0; iy < y1; ++iy)
            for (std::size_t ix = x0; ix < x1; ++ix)
                phi[iy * nx + ix] = std::sqrt(out[k++]) - r;
    });

    auto positive = [&](double v) { return v >= 0.0; };

    // crossing nodes indexed by edge: horizontal edge (ix,iy) id*2, vertical +1
    std::unordered_map<std::size_t, std::size_t> edge_node;
    std::vector<Vec2> nodes;
    auto node_on_edge = [&](std::size_t ix, std::size_t iy, bool vertical) -> std::size_t {
        std::size_t key = 2 * (iy * nx + ix) + (vertical ? 1 : 0);
        auto it = edge_node.find(key);
        if (it != edge_node.end()) return it->second;
        double p0 = phi[iy * nx + ix];
        double p1 = vertical ? phi[(iy + 1) * nx + ix] : phi[iy * nx + ix + 1];
        double t = p0 / (p0 - p1);
        Vec2 pos = vertical ? Vec2{vx(ix), vy(iy) + t * h} : Vec2{vx(ix) + t * h, vy(iy)};
        std::size_t id = nodes.size();
        nodes.push_back(pos);
        edge_node.emplace(key, id);
        return id;
    };

    std::vector<std::pair<std::size_t, std::size_t>> segments;
    for (std::size_t iy = 0; iy + 1 < ny; ++iy) {
        for (std::size_t ix = 0; ix + 1 < nx; ++ix) {
            double v00 = phi[iy * nx + ix];
            double v10 = phi[iy * nx + ix + 1];
            double v11 = phi[(iy + 1) * nx + ix + 1];
            double v01 = phi[(iy + 1) * nx + ix];
            bool s00 = positive(v00), s10 = positive(v10), s11 = positive(v11),
                 s01 = positive(v01);
            int count = int(s00 != s10) + int(s10 != s11) + int(s11 != s01) + int(s01 != s00);
            if (count == 0) continue;

            std::size_t south = s00 != s10 ? node_on_edge(ix, iy, false) : SIZE_MAX;
            std::size_t east = s10 != s11 ? node_on_edge(ix + 1, iy, true) : SIZE_MAX;
            std::size_t north = s01 != s11 ? node_on_edge(ix, iy + 1, false) : SIZE_MAX;
            std::size_t west = s00 != s01 ? node_on_edge(ix, iy, true) : SIZE_MAX;

            if (count == 2) {
                std::size_t a = SIZE_MAX, b = SIZE_MAX;
                for (std::size_t n : {south, east, north, west}) {
                    if (n == SIZE_MAX) continue;
                    (a == SIZE_MAX ? a : b) = n;
                }
                segments.emplace_back(a, b);
            } else if (count == 4) {
                // saddle cell: the exact center value decides which corners
                // connect diagonally
                Vec2 c{vx(ix) + h / 2, vy(iy) + h / 2};
                double phic = std::sqrt(kernel::min_dist_sq(F.sites(), c.x, c.y)) - r;
                bool center_like_00 = positive(phic) == s00;
                if (center_like_00) {
                    segments.emplace_back(south, east);
                    segments.emplace_back(north, west);
                } else {
                    segments.emplace_back(south, west);
                    segments.emplace_back(north, east);
                }
            }
        }
    }

    // merge crossing nodes at the tangential-contact scale
    double snap = 2.0 * h * h / std::max(r, h);
    UnionFind uf(nodes.size());
    {
        std::vector<std::size_t> order(nodes.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return nodes[a].x < nodes[b].x;
        });
        for (std::size_t i = 0; i < order.size(); ++i) {
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                if (nodes[order[j]].x - nodes[order[i]].x > snap) break;
                if (dist(nodes[order[i]], nodes[order[j]]) <= snap)
                    uf.unite(order[i], order[j]);
            }
        }
    }

    // re-index by merged representative, drop zero-length segments
    std::unordered_map<std::size_t, std::size_t> rep_index;
    std::vector<Vec2> merged_nodes;
    auto rep_of = [&](std::size_t n) {
        std::size_t r0 = uf.find(n);
        auto it = rep_index.find(r0);
        if (it != rep_index.end()) return it->second;
        std::size_t id = merged_nodes.size();
        merged_nodes.push_back(nodes[r0]);
        rep_index.emplace(r0, id);
        return id;
    };
    std::vector<std::pair<std::size_t, std::size_t>> msegs;
    msegs.reserve(segments.size());
    for (auto [a, b] : segments) {
        std::size_t ra = rep_of(a), rb = rep_of(b);
        if (ra != rb) msegs.emplace_back(ra, rb);
    }

    std::vector<std::vector<std::size_t>> incident(merged_nodes.size());
    for (std::size_t s = 0; s < msegs.size(); ++s) {
        incident[msegs[s].first].push_back(s);
        incident[msegs[s].second].push_back(s);
    }

    LevelCurveSet out;
    out.r = r;
    out.h = h;
    out.window = window;
    for (std::size_t n = 0; n < merged_nodes.size(); ++n)
        if (incident[n].size() > 2) out.anomalies.push_back(merged_nodes[n]);

    // connected components over merged nodes
    UnionFind comp(merged_nodes.size());
    for (auto [a, b] : msegs) comp.unite(a, b);
    std::map<std::size_t, int> comp_ids;
    for (std::size_t n = 0; n < merged_nodes.size(); ++n) {
        if (incident[n].empty()) continue;
        std::size_t root = comp.find(n);
        if (!comp_ids.count(root)) comp_ids.emplace(root, int(comp_ids.size()));
    }
    out.component_count = comp_ids.size();

    // trace maximal chains: walk from every node of degree != 2, then sweep
    // the remaining pure loops
    std::vector<bool> used(msegs.size(), false);
    auto other_end = [&](std::size_t s, std::size_t n) {
        return msegs[s].first == n ? msegs[s].second : msegs[s].first;
    };
    auto walk = [&](std::size_t start, std::size_t first_seg) {
        LevelCurve curve;
        curve.component = comp_ids.at(comp.find(start));
        curve.vertices.push_back(merged_nodes[start]);
        std::size_t node = start, seg = first_seg;
        while (true) {
            used[seg] = true;
            node = other_end(seg, node);
            curve.vertices.push_back(merged_nodes[node]);
            if (incident[node].size() != 2) break;
            std::size_t next = incident[node][0] == seg ? incident[node][1] : incident[node][0];
            if (used[next]) break;
            seg = next;
        }
        curve.closed = node == start;
        curve.bbox = {curve.vertices.front(), curve.vertices.front()};
        for (const auto& v : curve.vertices) {
            curve.bbox.lo.x = std::min(curve.bbox.lo.x, v.x);
            curve.bbox.lo.y = std::min(curve.bbox.lo.y, v.y);
            curve.bbox.hi.x = std::max(curve.bbox.hi.x, v.x);
            curve.bbox.hi.y = std::max(curve.bbox.hi.y, v.y);
        }
        out.chains.push_back(std::move(curve));
    };
    for (std::size_t n = 0; n < merged_nodes.size(); ++n) {
        if (incident[n].size() == 2) continue;
        for (std::size_t s : incident[n])
            if (!used[s]) walk(n, s);
    }
    for (std::size_t s = 0; s < msegs.size(); ++s)
        if (!used[s]) walk(msegs[s].first, s);

    return out;
}

ManifoldReport manifold_diagnostic(const LevelCurveSet& curves, std::optional<Vec2> focus,
                                   double window_radius) {
    ManifoldReport rep;
    rep.degree_anomalies = curves.anomalies.size();
    rep.anomaly_points = curves.anomalies;
    if (!focus) return rep;

    // per-component distance to the focus
    std::map<int, double> comp_dist;
    for (const auto& chain : curves.chains) {
        double best = comp_dist.count(chain.component)
                          ? comp_dist[chain.component]
                          : std::numeric_limits<double>::infinity();
        for (const auto& v : chain.vertices) best = std::min(best, dist(v, *focus));
        comp_dist[chain.component] = best;
    }
    double contains_tol = 2.0 * curves.h * std::sqrt(2.0);
    for (const auto& [comp, d] : comp_dist) {
        if (d <= window_radius) {
            ++rep.components_in_window;
            if (d <= contains_tol)
                rep.focus_on_curve = true;
            else
                ++rep.extra_components;
        }
    }
    return rep;
}

}  // namespace critfield
