#include "dwelltour/visibility.hpp"

#include <cmath>
#include <stdexcept>

namespace dwelltour {
namespace {

constexpr double kTangencyTol = 1e-9;  // rad
constexpr double kRadialTol = 1e-9;    // m

bool orbit_radius_ok(double rho, double r_min, double r_max, double turn_radius) {
    return rho >= std::max(turn_radius, r_min) - kRadialTol && rho <= r_max + kRadialTol;
}

}  // namespace

VisibilityRegion build_visibility_region(const TargetSpec& t, double altitude) {
    VisibilityRegion region;
    region.center = t.location;
    double hi = t.tilt_interval.hi;
    region.r_min = hi >= kPi / 2.0 ? 0.0 : altitude / std::tan(hi);
    region.r_max = altitude / std::tan(t.tilt_interval.lo);
    region.angular = (t.behavior == Behavior::ANGLE && t.azimuth_interval)
                         ? *t.azimuth_interval
                         : AngularInterval::full();
    return region;
}

bool circle_in_region(const Vec2& center, double radius, const VisibilityRegion& region) {
    if (radius <= 0.0) throw std::invalid_argument("radius must be > 0");
    double d = distance(center, region.center);
    // Points of the circle curve span distances [|d - radius|, d + radius]
    // from the region center.
    if (std::fabs(d - radius) < region.r_min - kRadialTol) return false;
    if (d + radius > region.r_max + kRadialTol) return false;
    if (region.angular.is_full()) return true;
    // A circle enclosing the region center spans every bearing.
    if (radius >= d) return false;
    double half = std::asin(std::min(1.0, radius / d));
    double b = bearing(center - region.center);
    return region.angular.contains_interval(normalize_angle(b - half), 2.0 * half, 1e-12);
}

bool dwell_feasible(const TargetSpec& t, const VisibilityRegion& region, double turn_radius) {
    if (t.loops == 0) return true;  // region nonempty by construction
    if (t.behavior == Behavior::FULL)
        return region.r_max >= std::max(turn_radius, region.r_min) - kRadialTol;

    double d_lo = region.r_min + turn_radius;
    double d_hi = region.r_max - turn_radius;
    if (d_lo > d_hi + kRadialTol) return false;
    if (region.angular.is_full()) return true;
    // Sector: the angular fit improves with d, so scan toward d_hi.
    double mid = region.angular.midpoint();
    constexpr int kSteps = 64;
    for (int i = kSteps; i >= 0; --i) {
        double d = d_lo + (d_hi - d_lo) * i / kSteps;
        if (circle_in_region(region.center + dir(mid) * d, turn_radius, region)) return true;
    }
    return false;
}

std::optional<DwellLoop> config_in_dwl(const Configuration& v, const TargetSpec& t,
                                       const VisibilityRegion& region, double turn_radius) {
    if (t.loops == 0) {
        if (!region.contains(v.position)) return std::nullopt;
        return DwellLoop{};  // kind NONE, loops 0
    }

    if (t.behavior == Behavior::FULL) {
        double rho = distance(v.position, t.location);
        if (!orbit_radius_ok(rho, region.r_min, region.r_max, turn_radius)) return std::nullopt;
        double radial = bearing(v.position - t.location);
        DwellLoop loop{DwellKind::ORBIT_TARGET, t.location, rho, OrbitDirection::CCW, t.loops};
        if (angular_distance(v.heading, radial + kPi / 2.0) <= kTangencyTol) {
            loop.direction = OrbitDirection::CCW;
            return loop;
        }
        if (angular_distance(v.heading, radial - kPi / 2.0) <= kTangencyTol) {
            loop.direction = OrbitDirection::CW;
            return loop;
        }
        return std::nullopt;
    }

    // ANY/ANGLE with loops > 0: pivot orbit at the minimum turning radius.
    Vec2 left = left_pivot(v, turn_radius);
    if (circle_in_region(left, turn_radius, region))
        return DwellLoop{DwellKind::ORBIT_PIVOT, left, turn_radius, OrbitDirection::CCW, t.loops};
    Vec2 right = right_pivot(v, turn_radius);
    if (circle_in_region(right, turn_radius, region))
        return DwellLoop{DwellKind::ORBIT_PIVOT, right, turn_radius, OrbitDirection::CW, t.loops};
    return std::nullopt;
}

double dwell_time(const DwellLoop& loop, double speed) {
    if (speed <= 0.0) throw std::invalid_argument("speed must be > 0");
    if (loop.kind == DwellKind::NONE) return 0.0;
    return loop.loops * kTwoPi * loop.radius / speed;
}

Vec2 left_pivot(const Configuration& v, double turn_radius) {
    return v.position + dir(v.heading + kPi / 2.0) * turn_radius;
}

Vec2 right_pivot(const Configuration& v, double turn_radius) {
    return v.position + dir(v.heading - kPi / 2.0) * turn_radius;
}

Configuration dwell_loop_point(const DwellLoop& loop, const Configuration& start,
                               double fraction) {
    if (loop.kind == DwellKind::NONE || loop.loops == 0) return start;
    double total = kTwoPi * loop.loops;
    double phi0 = bearing(start.position - loop.center);
    double sweep = total * fraction;
    double phi = loop.direction == OrbitDirection::CCW ? phi0 + sweep : phi0 - sweep;
    double heading = loop.direction == OrbitDirection::CCW ? phi + kPi / 2.0 : phi - kPi / 2.0;
    return Configuration(loop.center + dir(phi) * loop.radius, heading);
}

}  // namespace dwelltour
