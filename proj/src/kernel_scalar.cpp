#include <algorithm>
#include <limits>

#include "critfield/kernel.hpp"

namespace critfield::kernel {

void Sites::add_segment(double x0, double y0, double x1, double y1) {
    double ddx = x1 - x0;
    double ddy = y1 - y0;
    double len2 = ddx * ddx + ddy * ddy;
    if (len2 == 0.0) {
        add_point(x0, y0);
        return;
    }
    ax.push_back(x0);
    ay.push_back(y0);
    dx.push_back(ddx);
    dy.push_back(ddy);
    inv_len2.push_back(1.0 / len2);
}

namespace scalar {

double min_dist_sq(const Sites& s, double qx, double qy) {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t np = s.point_count();
    for (std::size_t i = 0; i < np; ++i) {
        double ex = qx - s.px[i];
        double ey = qy - s.py[i];
        double d2 = ex * ex + ey * ey;
        best = std::min(best, d2);
    }
    const std::size_t ns = s.segment_count();
    for (std::size_t i = 0; i < ns; ++i) {
        double rx = qx - s.ax[i];
        double ry = qy - s.ay[i];
        double t = (rx * s.dx[i] + ry * s.dy[i]) * s.inv_len2[i];
        t = std::min(1.0, std::max(0.0, t));
        double ex = rx - t * s.dx[i];
        double ey = ry - t * s.dy[i];
        double d2 = ex * ex + ey * ey;
        best = std::min(best, d2);
    }
    return best;
}

void min_dist_sq_batch(const Sites& s, const double* qx, const double* qy, double* out,
                       std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = min_dist_sq(s, qx[i], qy[i]);
}

TwoDistSq two_min_dist_sq(const Sites& s, double qx, double qy) {
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
    const std::size_t np = s.point_count();
    for (std::size_t i = 0; i < np; ++i) {
        double ex = qx - s.px[i];
        double ey = qy - s.py[i];
        feed(ex * ex + ey * ey);
    }
    const std::size_t ns = s.segment_count();
    for (std::size_t i = 0; i < ns; ++i) {
        double rx = qx - s.ax[i];
        double ry = qy - s.ay[i];
        double t = (rx * s.dx[i] + ry * s.dy[i]) * s.inv_len2[i];
        t = std::min(1.0, std::max(0.0, t));
        double ex = rx - t * s.dx[i];
        double ey = ry - t * s.dy[i];
        feed(ex * ex + ey * ey);
    }
    return {d1, d2};
}

}  // namespace scalar
}  // namespace critfield::kernel
