#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "critfield/distfield.hpp"
#include "critfield/planar_set.hpp"
#include "critfield/realset.hpp"
#include "critfield/setgen.hpp"

namespace critfield {

/// Dyadic band profile delta_n = D 2^-n with per-band quantities.
struct DyadicProfile {
    double D = 0.0;
    int N = 0;
    std::vector<double> delta;          // delta_0..delta_N
    std::vector<std::size_t> p;         // packing counts per band
    std::vector<double> weighted;       // p_n delta_n^2
    double weighted_sum = 0.0;          // sum p_n delta_n^2
    double bound = 0.0;                 // 1e5 D^2
    bool covering_verified = false;     // delta_n/8 balls cover the probes
    bool disjointness_verified = false; // delta_n/40 balls pairwise disjoint
};

enum class Verdict { bounded, diverging };

struct SumintReport {
    double alpha = 0.0;
    int N = 0;
    double sum_values = 0.0;       // (i)  sum g(delta_k) delta_k^alpha
    double sum_differences = 0.0;  // (ii) sum (g(delta_{k+1})-g(delta_k)) delta_k^alpha
    double integral = 0.0;         // (iii) integral_{delta_N}^{D} g(x) x^(alpha-1) dx
    Verdict verdict_values = Verdict::bounded;
    Verdict verdict_differences = Verdict::bounded;
    Verdict verdict_integral = Verdict::bounded;
    bool verdicts_agree = false;
    bool sandwich_ok = false;  // 2^-a g(d_k) d_k^a <= I_k <= 2^(a-1) g(d_{k+1}) d_{k+1}^a
    double threshold = 0.0;
};

/// Finite-depth check of the three equivalent conditions for a nonincreasing
/// profile g on (0, D] with g(D) = 0. Divergence cannot be certified
/// numerically: a quantity "diverges" when its partial exceeds
/// threshold_factor times its first nonzero term.
SumintReport sumint_check(const std::function<double(double)>& g, double D, double alpha,
                          int N = 20, double threshold_factor = 1e3);

struct ChardonReport {
    double S = 0.0;         // sum delta_n^{3/2} G_{1/2}(K cap band_n)
    double integral = 0.0;  // int_0^inf G_{1/2}(K cap [r,inf)) sqrt(r) dr, per-gap closed form
    int bands = 0;
    bool consistent = false;  // the two finiteness routes agree through the sandwich
    std::vector<double> band_terms;
};

ChardonReport chardon_series(const CompactRealSet& K, double D);
/// Analytic band form for the t45 family (counts too large to materialize).
ChardonReport chardon_series(const T45Set& t45, double D);

DyadicProfile annulus_packing(const PlanarCompactSet& F, double D, int N);

struct MkrbProfile {
    double box_side = 0.0;
    std::vector<std::pair<double, double>> h_of_r;  // (r, box-count estimate of H^1)
    double integral = 0.0;                          // trapezoid over the r grid
    std::size_t records = 0;
};

/// Box-counting estimate of h(r) = H^1{x in Crit(d_F): d_F(x) > r} from
/// detected critical points; an indicator, not a measure computation.
MkrbProfile mkrb_profile(const PlanarCompactSet& F, std::span<const double> r_grid,
                         double box_side, double scan_h, double tol = 1e-9);

struct NakouliReport {
    double delta = 0.0;
    double bound = 0.0;          // 6e4 sqrt(delta)
    double value_gap_sum = 0.0;  // G_{1/2} of detected critical values in B(a, delta/3)
    double margin = 0.0;         // bound / max(value_gap_sum, tiny)
    std::size_t records = 0;
    bool pass = false;
};

NakouliReport nakouli_bound_check(const PlanarCompactSet& F, Vec2 a, double scan_h,
                                  double tol = 1e-9);

struct KonmnReport {
    std::string p_decimal;  // exact arbitrary-precision count
    double band_value = 0.0;
    double band_bound = 0.0;   // 1e10 D^2
    double forced_lhs = 0.0;   // 8^-1 (p-1)^{1/2} (beta-alpha)^{1/2} beta^{3/2}
    bool excluded = false;     // P subset cv would contradict the band bound
};

/// p = floor(10^25 D^4 (beta-alpha)^-1 beta^-3/2) + 3 evaluated exactly;
/// verifies arithmetically that a p-point equidistant set in the band cannot
/// fit inside any cv set satisfying the 1e10 D^2 band bound.
KonmnReport konmn_bound(double D, double alpha, double beta, const CompactRealSet& cv);

struct PorosityPoint {
    double r = 0.0;
    double gamma = 0.0;  // largest component of (0,r) \ cv
    double ratio = 0.0;  // gamma / r^5
};

std::vector<PorosityPoint> porosity_probe(const CompactRealSet& cv,
                                          std::span<const double> r_grid);

struct OdrnRoundTrip {
    bool superset = false;  // every target value recovered within tolerance
    bool recovered_bt = false;
    double worst_error = 0.0;
    CompactRealSet recovered;
};

/// End-to-end round trip: target A -> paired-point construction -> critical-point
/// scan -> recovered values superset of A within tol, recovered set BT_{1/2}.
OdrnRoundTrip odrn_round_trip(const CompactRealSet& A, double eps, double h, double tol);

}  // namespace critfield
