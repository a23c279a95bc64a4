// Planar geometry primitives shared by the planner: 2-D vectors, angle
// normalization, and wrap-aware angular intervals.

#pragma once

#include <cmath>

namespace dwelltour {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x, double y) : x(x), y(y) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }

    [[nodiscard]] double norm() const { return std::hypot(x, y); }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Unit vector at the given angle.
inline Vec2 dir(double angle) { return {std::cos(angle), std::sin(angle)}; }

/// Wrap an angle into [0, 2pi).
inline double normalize_angle(double a) {
    double y = std::fmod(a, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    if (y >= kTwoPi) y = 0.0;
    return y;
}

/// Smallest absolute angular separation, in [0, pi].
inline double angular_distance(double a, double b) {
    double d = std::fabs(normalize_angle(a) - normalize_angle(b));
    return d > kPi ? kTwoPi - d : d;
}

/// Bearing of a displacement, in [0, 2pi). Zero vector maps to 0.
inline double bearing(const Vec2& v) {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    return normalize_angle(std::atan2(v.y, v.x));
}

/// Closed angular interval [start, start + extent] on the circle.
/// extent == 2pi represents the full circle.
struct AngularInterval {
    double start = 0.0;   // in [0, 2pi)
    double extent = kTwoPi; // in (0, 2pi]

    static AngularInterval full() { return {0.0, kTwoPi}; }

    [[nodiscard]] bool is_full() const { return extent >= kTwoPi; }

    /// Wrap-aware membership: (theta - start) mod 2pi <= extent.
    [[nodiscard]] bool contains(double theta) const {
        if (is_full()) return true;
        double off = normalize_angle(theta - start);
        return off <= extent;
    }

    /// Whether [inner_start, inner_start + inner_extent] lies inside this
    /// interval, wrap-aware.
    [[nodiscard]] bool contains_interval(double inner_start, double inner_extent,
                                         double tol = 0.0) const {
        if (is_full()) return true;
        if (inner_extent > extent + tol) return false;
        double off = normalize_angle(inner_start - start);
        return off + inner_extent <= extent + tol;
    }

    [[nodiscard]] double midpoint() const { return normalize_angle(start + extent * 0.5); }
};

}  // namespace dwelltour
