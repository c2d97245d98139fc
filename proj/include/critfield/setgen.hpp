#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "critfield/realset.hpp"

namespace critfield {

/// Truncation of the Cantor set C(alpha): at each step the middle open
/// interval of proportional length 1-2*alpha is removed from every component.
/// The explicit interval representation is only materialized up to
/// kMaxExplicitDepth components (2^depth intervals); the census and the
/// analytic tail are exact at any depth.
struct CantorSet {
    double alpha = 0.0;
    int depth = 0;

    /// 2^depth closed intervals of length alpha^depth in [0,1]; empty when
    /// depth exceeds kMaxExplicitDepth.
    CompactRealSet set;

    static constexpr int kMaxExplicitDepth = 22;

    bool has_explicit() const { return !set.empty(); }
    /// Gap classes of the truncation: level j holds 2^(j-1) gaps of length
    /// (1-2a) a^(j-1), j = 1..depth. The set itself has measure (2a)^depth.
    GapCensus census() const;
    /// Census of the null skeleton (interval endpoints): the truncation gaps
    /// plus 2^depth interior gaps of length alpha^depth.
    GapCensus endpoint_census() const;
    /// Exact remaining degree-s gap sum of the gaps removed beyond `depth`:
    /// (1-2a)^s (2a^s)^depth / (1 - 2a^s); +inf when 2a^s >= 1.
    double tail_gap_sum(double s) const;
    double measure() const;  // (2 alpha)^depth
};

CantorSet cantor(double alpha, int depth);

/// Closed form of G_{1/2}(C(alpha)) = sqrt(1-2a)/(1-2 sqrt(a)).
double cantor_gap_sum_half_closed(double alpha);

/// The assembly K = {1} u U_n (1 + 2^-n + 2^-n C(1/4 - 1/(5n))) u {16},
/// with block n truncated at depth_rule(n).
struct TfAssembly {
    int n_max = 0;
    std::vector<int> depths;    // per block, index n-1
    std::vector<double> alphas; // 1/4 - 1/(5n)

    CompactRealSet set;       // fat truncation, including {1} and {16}
    CompactRealSet skeleton;  // null skeleton (all interval endpoints)

    /// G_{1/2} of the blocks not generated (n > n_max), via the closed form.
    double tail_beyond_blocks_half = 0.0;
    /// G_{1/2} remainder of the within-block truncations.
    double truncation_tail_half = 0.0;

    double block_min(int n) const;  // 1 + 2^-n
    double block_max(int n) const;  // 1 + 2^-(n-1)
};

double tf_block_alpha(int n);

TfAssembly tf_assembly(int n_max, const std::function<int(int)>& depth_rule = {});

/// K = {0} u {t_i^n} where t_0^n..t_{k_n}^n is the equidistant partition of
/// [delta_n/2, delta_n], delta_n = 2^-n, k_n = floor((n delta_n)^-4) + 1.
struct T45Set {
    int n_max = 0;
    std::vector<std::uint64_t> k;  // k_n, index n-1

    /// Explicit point representation; empty when constructed via t45_bands.
    CompactRealSet set;

    double delta(int n) const;
    /// G_s(K cap [delta_{n+1}, delta_n]) = k_n (delta_n / (2 k_n))^s.
    double band_gap_sum(int n, double s) const;
    GapCensus census() const;
};

/// Explicit representation; throws "resolution overflow" when k_n is not
/// representable (n_max > 20) or the point count does not fit in memory
/// (n_max > 9; use t45_bands for the analytic form).
T45Set t45_set(int n_max);

/// Band/census form only, exact for n_max <= 20.
T45Set t45_bands(int n_max);

}  // namespace critfield
