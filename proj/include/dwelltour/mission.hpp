// Mission domain model: UAV parameters and the per-target imaging table,
// with strict JSON ingestion and feasibility screening.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwelltour/dubins.hpp"
#include "dwelltour/geometry.hpp"

namespace dwelltour {

enum class Behavior { ANY, ANGLE, FULL };

std::string_view to_string(Behavior b);

struct UavParams {
    double turn_radius = 0.0;  // m
    double altitude = 0.0;     // m
    double speed = 0.0;        // m/s
    Configuration start;
};

/// Closed real interval, used for tilt bounds in (0, pi/2].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct TargetSpec {
    std::string id;
    Vec2 location;
    Behavior behavior = Behavior::ANY;
    int loops = 0;  // required dwell loops, >= 0
    std::optional<AngularInterval> azimuth_interval;  // present iff ANGLE
    Interval tilt_interval;  // subset of (0, pi/2]
};

struct Mission {
    UavParams uav;
    std::vector<TargetSpec> targets;
};

/// Parse/validation failure; `field` names the offending entry
/// (e.g. "targets[2].loops").
class MissionParseError : public std::runtime_error {
public:
    MissionParseError(std::string field, const std::string& message)
        : std::runtime_error("mission parse error at '" + field + "': " + message),
          field_(std::move(field)) {}
    [[nodiscard]] const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Parse a mission document (JSON text). Angles are accepted in radians and
/// canonicalized; unknown fields are rejected.
Mission parse_mission(const std::string& document);

/// Inverse of parse_mission, suitable for round-tripping.
std::string serialize_mission(const Mission& m);

struct Finding {
    std::string target_id;
    std::string message;
};

/// Per-target dwell-maneuver feasibility screening. Empty result means the
/// mission is feasible.
std::vector<Finding> validate_mission(const Mission& m);

}  // namespace dwelltour
