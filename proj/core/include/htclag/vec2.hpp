#pragma once

#include <cmath>

namespace htclag {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

/// Rotate by -90 degrees; maps a ccw edge direction to its outward normal.
inline Vec2 outward_normal_dir(Vec2 edge) { return {edge.y, -edge.x}; }

/// Symmetric 2x2 matrix, stored as the three independent entries.
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    Sym2& operator+=(const Sym2& o) { xx += o.xx; xy += o.xy; yy += o.yy; return *this; }
    Sym2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }

    Vec2 apply(Vec2 v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }
    double quad(Vec2 v) const { return dot(v, apply(v)); }
    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }
};

/// Scaled outer product s * (n (x) n).
inline Sym2 outer(Vec2 n, double s) { return {s * n.x * n.x, s * n.x * n.y, s * n.y * n.y}; }

/// Compensated (Neumaier) running sum; used for every conservation audit so
/// residuals near 1e-12 relative are meaningful and runs are reproducible.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;

    void add(double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

} // namespace htclag
