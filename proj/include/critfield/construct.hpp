#pragma once

#include <optional>
#include <span>
#include <vector>

#include "critfield/planar_set.hpp"
#include "critfield/realset.hpp"

namespace critfield {

/// Planar realization F = {(g(y), +-y) : y in K} of a prescribed null target
/// K subset of [a,b], a > 0, with g(y) = sqrt(2b) * G_{1/2}(K cap [a,y]).
/// Every y in K is then a critical value of d_F, attained at (g(y), 0).
struct FerryConstruction {
    CompactRealSet K;
    std::vector<double> ys;  // representation points, ascending
    std::vector<double> g;   // g at each point
    double a = 0.0;
    double b = 0.0;
    PlanarCompactSet F;

    double g_of(double y) const;  // y must be a representation point
};

FerryConstruction build_ferry_set(const CompactRealSet& K);

struct ProjectionCheck {
    bool ok = false;
    double margin = 0.0;  // min over non-target sites minus v
};

/// Brute-force confirmation that the metric projection of (g(v), 0) is
/// exactly the symmetric pair {(g(v), v), (g(v), -v)}.
ProjectionCheck projection_check(const FerryConstruction& c, double v);

/// Brute-force check of: z > g(v) implies dist((z,0), F) > v.
bool exterior_check(const FerryConstruction& c, double v, double z);

struct TfWitness {
    double x = 0.0;
    Interval gap;
    double ratio = 0.0;      // |I| / (y - x)
    double threshold = 0.0;  // (4y/b)
};

/// Searches left neighbors x of y for a gap I inside (x, y) with
/// |I| >= (4y/b)(y-x); returns the deepest (smallest y-x) witness found.
std::optional<TfWitness> tf_witness(const CompactRealSet& K, double y, double b,
                                    int max_neighbors = 256);

enum class AssembleMode { bounded, closed };

struct TranslatePart {
    PlanarCompactSet part;
    double delta = 0.0;  // guard-ball scale: balls B(c, 9 delta) stay disjoint
};

struct Assembly {
    PlanarCompactSet whole;
    std::vector<Vec2> centers;
    std::vector<double> deltas;
    double guard_area = 0.0;  // sum of the guard-ball areas
    /// Level-set locality verified by distance queries: for each part,
    /// d_whole == d_part+c wherever d_part+c <= delta inside B(c, 7 delta).
    bool locality_verified = false;
};

/// Translated disjoint union of parts. Bounded mode packs disjoint guard
/// balls B(c, 9 delta) into a rectangle by greedy shelf placement (decreasing
/// delta); closed mode spaces parts so that
/// dist(F_k + c_k, F_l + c_l) >= 4 max(diam F_k, diam F_l) + 1.
Assembly assemble_translates(std::span<const TranslatePart> parts, AssembleMode mode,
                             std::optional<Rect> rect = std::nullopt);

}  // namespace critfield
