// Grid discretization of each target's dwell set, parameterized by the
// maneuver family: polar location x heading grids for overfly targets,
// orbit radius x tangent grids for target-centered circles, and pivot
// location x tangent grids for minimum-radius loops. Spacings are
// (delta_r, delta_theta, delta_alpha): radial, location-angular, heading.

#pragma once

#include <string>
#include <vector>

#include "dwelltour/mission.hpp"
#include "dwelltour/visibility.hpp"

namespace dwelltour {

struct SpacingParams {
    double delta_r = 0.0;      // m
    double delta_theta = 0.0;  // rad
    double delta_alpha = 0.0;  // rad
};

/// Named grid-spacing presets "condition1" .. "condition7", coarse to fine.
SpacingParams spacing_preset(int condition);
SpacingParams parse_spacing(const std::string& text);  // preset name or dr=..,dtheta=..,dalpha=..
int spacing_preset_count();

/// A sampled configuration paired with its target and dwell loop.
struct SampledNode {
    int node_id = -1;
    Configuration config;
    int target_index = -1;
    DwellLoop loop;
    double dwell_seconds = 0.0;
};

/// All grid configurations of one target's dwell set, deduplicated on
/// (position, heading) within 1e-9, in deterministic radial-major order.
/// Grids anchor at interval lower bounds and always include the upper
/// endpoints. Nonempty whenever the target admits a dwell maneuver.
std::vector<SampledNode> sample_target(const TargetSpec& t, const VisibilityRegion& region,
                                       const UavParams& uav, const SpacingParams& sp);

struct SampleResult {
    std::vector<SampledNode> nodes;          // globally renumbered, target-major order
    std::vector<int> per_target_counts;      // indexed by target
    std::vector<std::string> empty_targets;  // ids of targets with no samples
};

SampleResult sample_mission(const Mission& m, const SpacingParams& sp);

}  // namespace dwelltour
