// Visibility regions (annulus / annular sector around each target), dwell
// maneuver feasibility, and membership of configurations in the dwell set.

#pragma once

#include <optional>

#include "dwelltour/dubins.hpp"
#include "dwelltour/geometry.hpp"
#include "dwelltour/mission.hpp"

namespace dwelltour {

/// Ground-plane set from which a target can be imaged: an annulus centered at
/// the target, cut to an angular sector when the behavior constrains azimuth.
struct VisibilityRegion {
    Vec2 center;
    double r_min = 0.0;
    double r_max = 0.0;
    AngularInterval angular = AngularInterval::full();

    [[nodiscard]] bool contains(const Vec2& p) const {
        double d = distance(p, center);
        if (d < r_min - 1e-9 || d > r_max + 1e-9) return false;
        return angular.is_full() || angular.contains(bearing(p - center));
    }
};

enum class OrbitDirection { CCW, CW };

enum class DwellKind {
    NONE,          // loops == 0: overfly only
    ORBIT_TARGET,  // FULL: circles centered on the target
    ORBIT_PIVOT,   // ANY/ANGLE: minimum-radius circles about a pivot
};

struct DwellLoop {
    DwellKind kind = DwellKind::NONE;
    Vec2 center;
    double radius = 0.0;
    OrbitDirection direction = OrbitDirection::CCW;
    int loops = 0;
};

/// Radial limits a/tan(tilt); a tilt upper bound of pi/2 degenerates the
/// annulus to a disk (r_min = 0). ANGLE behavior carries the azimuth sector.
VisibilityRegion build_visibility_region(const TargetSpec& t, double altitude);

/// True iff the whole circle curve of the given radius about `center` lies in
/// the region. Closed form over the annulus plus a bearing-spread test for
/// sectors.
bool circle_in_region(const Vec2& center, double radius, const VisibilityRegion& region);

/// Whether at least one valid dwell maneuver exists for the target.
bool dwell_feasible(const TargetSpec& t, const VisibilityRegion& region, double turn_radius);

/// The dwell loop associated with a configuration, if the configuration is a
/// valid dwell start (i.e. lies in the target's dwell set). Tangency is
/// tested to 1e-9 rad; when both pivot circles fit, the left (CCW) loop wins.
std::optional<DwellLoop> config_in_dwl(const Configuration& v, const TargetSpec& t,
                                       const VisibilityRegion& region, double turn_radius);

/// loops * circumference / speed; zero for DwellKind::NONE.
double dwell_time(const DwellLoop& loop, double speed);

/// Centers of the left/right turn circles tangent to the configuration.
Vec2 left_pivot(const Configuration& v, double turn_radius);
Vec2 right_pivot(const Configuration& v, double turn_radius);

/// Start/end configuration of the loop reached by traversing `fraction` in
/// [0, 1] of the full maneuver. Used for route recovery.
Configuration dwell_loop_point(const DwellLoop& loop, const Configuration& start,
                               double fraction);

}  // namespace dwelltour
