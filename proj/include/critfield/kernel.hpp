#pragma once

#include <cstddef>
#include <vector>

namespace critfield::kernel {

/// Site geometry in structure-of-arrays form: point sites plus segments
/// parameterized a + t(b-a), t in [0,1], with the inverse squared length
/// precomputed. Degenerate segments are stored as points by the builder.
struct Sites {
    std::vector<double> px, py;
    std::vector<double> ax, ay, dx, dy, inv_len2;

    std::size_t point_count() const { return px.size(); }
    std::size_t segment_count() const { return ax.size(); }
    bool empty() const { return px.empty() && ax.empty(); }

    void add_point(double x, double y) {
        px.push_back(x);
        py.push_back(y);
    }
    void add_segment(double x0, double y0, double x1, double y1);
};

/// Two smallest squared site distances (d1 <= d2); d2 is +inf for a single
/// site. Both are plain order statistics, so every backend returns identical
/// bits.
struct TwoDistSq {
    double d1;
    double d2;
};

using MinDistSqFn = double (*)(const Sites&, double qx, double qy);
using MinDistSqBatchFn = void (*)(const Sites&, const double* qx, const double* qy,
                                  double* out, std::size_t n);
using TwoMinDistSqFn = TwoDistSq (*)(const Sites&, double qx, double qy);

namespace scalar {
double min_dist_sq(const Sites& s, double qx, double qy);
void min_dist_sq_batch(const Sites& s, const double* qx, const double* qy, double* out,
                       std::size_t n);
TwoDistSq two_min_dist_sq(const Sites& s, double qx, double qy);
}  // namespace scalar

#if defined(CRITFIELD_HAVE_AVX2)
namespace avx2 {
double min_dist_sq(const Sites& s, double qx, double qy);
void min_dist_sq_batch(const Sites& s, const double* qx, const double* qy, double* out,
                       std::size_t n);
TwoDistSq two_min_dist_sq(const Sites& s, double qx, double qy);
}  // namespace avx2
#endif

// Selected at startup from CPU capabilities.
extern const MinDistSqFn min_dist_sq;
extern const MinDistSqBatchFn min_dist_sq_batch;
extern const TwoMinDistSqFn two_min_dist_sq;
const char* active_backend();

}  // namespace critfield::kernel
