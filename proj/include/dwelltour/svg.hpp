// Static SVG plots for routes, Pareto fronts, greedy-gap curves and
// refinement sweeps. Plots are projections of already-computed results.

#pragma once

#include <string>
#include <vector>

#include "dwelltour/planner.hpp"

namespace dwelltour {

/// Mission geometry plus the recovered route (regions, dwell circles, the
/// closed trajectory, the initial maneuver, and the start marker).
std::string route_svg(const Mission& m, const std::vector<VisibilityRegion>& regions,
                      const RoadmapGraph& g, const PlanResult& result);

struct LabeledSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Generic step/line chart used for fronts, gap curves and convergence plots.
std::string chart_svg(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<LabeledSeries>& series,
                      bool step_curve);

}  // namespace dwelltour
