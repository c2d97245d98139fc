#pragma once

#include <algorithm>
#include <cmath>

namespace critfield {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm_sq(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm_sq(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

inline Vec2 normalized(Vec2 a) {
    double n = norm(a);
    return {a.x / n, a.y / n};
}

struct Rect {
    Vec2 lo;
    Vec2 hi;
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    bool contains(Vec2 p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
    Rect inflated(double m) const { return {{lo.x - m, lo.y - m}, {hi.x + m, hi.y + m}}; }
};

// Squared distance from p to the segment a + t(b-a), t in [0,1].
inline double segment_dist_sq(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 d = b - a;
    double len2 = norm_sq(d);
    if (len2 == 0.0) return norm_sq(p - a);
    double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return norm_sq(p - (a + t * d));
}

}  // namespace critfield
