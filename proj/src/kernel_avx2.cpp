#if defined(CRITFIELD_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "critfield/kernel.hpp"

namespace critfield::kernel::avx2 {
namespace {

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d m = _mm_min_pd(lo, hi);
    m = _mm_min_sd(m, _mm_unpackhi_pd(m, m));
    return _mm_cvtsd_f64(m);
}

// Same mul/add arithmetic as the scalar kernel (no FMA), so both paths
// produce bit-identical minima.
inline double query(const Sites& s, double qx, double qy) {
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    const __m256d q_x = _mm256_set1_pd(qx);
    const __m256d q_y = _mm256_set1_pd(qy);

    const std::size_t np = s.point_count();
    std::size_t i = 0;
    for (; i + 4 <= np; i += 4) {
        __m256d ex = _mm256_sub_pd(q_x, _mm256_loadu_pd(&s.px[i]));
        __m256d ey = _mm256_sub_pd(q_y, _mm256_loadu_pd(&s.py[i]));
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
        best = _mm256_min_pd(best, d2);
    }
    double out = hmin(best);
    for (; i < np; ++i) {
        double ex = qx - s.px[i];
        double ey = qy - s.py[i];
        out = std::min(out, ex * ex + ey * ey);
    }

    const std::size_t ns = s.segment_count();
    best = _mm256_set1_pd(out);
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    i = 0;
    for (; i + 4 <= ns; i += 4) {
        __m256d rx = _mm256_sub_pd(q_x, _mm256_loadu_pd(&s.ax[i]));
        __m256d ry = _mm256_sub_pd(q_y, _mm256_loadu_pd(&s.ay[i]));
        __m256d vdx = _mm256_loadu_pd(&s.dx[i]);
        __m256d vdy = _mm256_loadu_pd(&s.dy[i]);
        __m256d t = _mm256_mul_pd(
            _mm256_add_pd(_mm256_mul_pd(rx, vdx), _mm256_mul_pd(ry, vdy)),
            _mm256_loadu_pd(&s.inv_len2[i]));
        t = _mm256_min_pd(one, _mm256_max_pd(zero, t));
        __m256d ex = _mm256_sub_pd(rx, _mm256_mul_pd(t, vdx));
        __m256d ey = _mm256_sub_pd(ry, _mm256_mul_pd(t, vdy));
        __m256d d2 = _mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey));
        best = _mm256_min_pd(best, d2);
    }
    out = hmin(best);
    for (; i < ns; ++i) {
        double rx = qx - s.ax[i];
        double ry = qy - s.ay[i];
        double t = (rx * s.dx[i] + ry * s.dy[i]) * s.inv_len2[i];
        t = std::min(1.0, std::max(0.0, t));
        double ex = rx - t * s.dx[i];
        double ey = ry - t * s.dy[i];
        out = std::min(out, ex * ex + ey * ey);
    }
    return out;
}

// Per-lane running (min1, min2); the two global order statistics are then
// taken from the lane candidates plus the remainder elements.
inline TwoDistSq two_min_query(const Sites& s, double qx, double qy) {
    const double inf = std::numeric_limits<double>::infinity();
    __m256d m1 = _mm256_set1_pd(inf);
    __m256d m2 = _mm256_set1_pd(inf);
    const __m256d q_x = _mm256_set1_pd(qx);
    const __m256d q_y = _mm256_set1_pd(qy);
    auto feed_vec = [&](__m256d d2v) {
        m2 = _mm256_min_pd(m2, _mm256_max_pd(m1, d2v));
        m1 = _mm256_min_pd(m1, d2v);
    };

    const std::size_t np = s.point_count();
    std::size_t i = 0;
    for (; i + 4 <= np; i += 4) {
        __m256d ex = _mm256_sub_pd(q_x, _mm256_loadu_pd(&s.px[i]));
        __m256d ey = _mm256_sub_pd(q_y, _mm256_loadu_pd(&s.py[i]));
        feed_vec(_mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)));
    }
    std::size_t point_rem = i;

    const std::size_t ns = s.segment_count();
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t j = 0;
    for (; j + 4 <= ns; j += 4) {
        __m256d rx = _mm256_sub_pd(q_x, _mm256_loadu_pd(&s.ax[j]));
        __m256d ry = _mm256_sub_pd(q_y, _mm256_loadu_pd(&s.ay[j]));
        __m256d vdx = _mm256_loadu_pd(&s.dx[j]);
        __m256d vdy = _mm256_loadu_pd(&s.dy[j]);
        __m256d t = _mm256_mul_pd(
            _mm256_add_pd(_mm256_mul_pd(rx, vdx), _mm256_mul_pd(ry, vdy)),
            _mm256_loadu_pd(&s.inv_len2[j]));
        t = _mm256_min_pd(one, _mm256_max_pd(zero, t));
        __m256d ex = _mm256_sub_pd(rx, _mm256_mul_pd(t, vdx));
        __m256d ey = _mm256_sub_pd(ry, _mm256_mul_pd(t, vdy));
        feed_vec(_mm256_add_pd(_mm256_mul_pd(ex, ex), _mm256_mul_pd(ey, ey)));
    }

    double d1 = std::numeric_limits<double>::infinity();
    double d2 = d1;
    auto feed = [&](double v) {
        if (v < d1) {
            d2 = d1;
            d1 = v;
        } else if (v < d2) {
            d2 = v;
        }
    };
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m1);
    for (double v : lanes) feed(v);
    _mm256_store_pd(lanes, m2);
    for (double v : lanes) feed(v);
    for (i = point_rem; i < np; ++i) {
        double ex = qx - s.px[i];
        double ey = qy - s.py[i];
        feed(ex * ex + ey * ey);
    }
    for (; j < ns; ++j) {
        double rx = qx - s.ax[j];
        double ry = qy - s.ay[j];
        double t = (rx * s.dx[j] + ry * s.dy[j]) * s.inv_len2[j];
        t = std::min(1.0, std::max(0.0, t));
        double ex = rx - t * s.dx[j];
        double ey = ry - t * s.dy[j];
        feed(ex * ex + ey * ey);
    }
    return {d1, d2};
}

}  // namespace

double min_dist_sq(const Sites& s, double qx, double qy) { return query(s, qx, qy); }

TwoDistSq two_min_dist_sq(const Sites& s, double qx, double qy) {
    return two_min_query(s, qx, qy);
}

void min_dist_sq_batch(const Sites& s, const double* qx, const double* qy, double* out,
                       std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = query(s, qx[i], qy[i]);
}

}  // namespace critfield::kernel::avx2

#endif  // CRITFIELD_HAVE_AVX2
