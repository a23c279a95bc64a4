// Shortest Dubins paths between planar configurations (position + heading)
// for a forward-only vehicle with a minimum turning radius.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dwelltour/geometry.hpp"

namespace dwelltour {

/// UAV state: planar position in meters plus heading in [0, 2pi).
struct Configuration {
    Vec2 position;
    double heading = 0.0;

    Configuration() = default;
    Configuration(double x, double y, double heading_rad)
        : position(x, y), heading(normalize_angle(heading_rad)) {}
    Configuration(Vec2 p, double heading_rad)
        : position(p), heading(normalize_angle(heading_rad)) {}
};

/// Near-coincidence used for the degenerate zero-length path and node dedup:
/// positions within 1e-9 m and headings within 1e-9 rad (wrap-aware).
bool approx_same(const Configuration& a, const Configuration& b, double tol = 1e-9);

/// The six Dubins words, in canonical tie-break order.
enum class DubinsWord : uint8_t { LSL, LSR, RSL, RSR, RLR, LRL };

std::string_view to_string(DubinsWord w);

/// A three-segment Dubins path. Turn extents are stored in radians and the
/// straight extent in meters, so total length = r*(turns) + straight.
struct DubinsPath {
    DubinsWord word = DubinsWord::LSL;
    std::array<double, 3> segment_params{0.0, 0.0, 0.0};
    double turn_radius = 0.0;
    double total_length = 0.0;

    /// 'L', 'S' or 'R' for segment index 0..2.
    [[nodiscard]] char segment_kind(int index) const;
    /// Segment length in meters.
    [[nodiscard]] double segment_length(int index) const;
};

/// Minimum-length path among all geometrically valid words; ties break by
/// word order LSL < LSR < RSL < RSR < RLR < LRL. Near-coincident endpoints
/// yield a zero-length path.
DubinsPath dubins_shortest_path(const Configuration& from, const Configuration& to,
                                double turn_radius);

/// Every valid word's path for the pair, in word order. Used as the
/// enumeration oracle for optimality checks and for diagnostics.
std::vector<DubinsPath> dubins_all_paths(const Configuration& from, const Configuration& to,
                                         double turn_radius);

/// Shortest-path traversal time at constant speed.
double dubins_time(const Configuration& from, const Configuration& to,
                   double turn_radius, double speed);

/// Endpoint obtained by integrating the three segments from `from`.
Configuration dubins_endpoint(const DubinsPath& path, const Configuration& from);

/// Configuration at arc length s (clamped to [0, total_length]) along the path.
Configuration dubins_point_at(const DubinsPath& path, const Configuration& from, double s);

/// Configurations spaced at arc-length intervals <= step, beginning at `from`
/// and ending at the path endpoint. A zero-length path yields one point.
std::vector<Configuration> sample_path_points(const DubinsPath& path,
                                              const Configuration& from, double step);

}  // namespace dwelltour
