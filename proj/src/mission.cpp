#include "dwelltour/mission.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "dwelltour/visibility.hpp"

namespace dwelltour {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw MissionParseError(field, msg);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(where + "." + it.key(), "unknown field");
}

double finite_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) fail(where + "." + key, "missing required field");
    const json& v = obj.at(key);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) fail(where + "." + key, "must be finite");
    return x;
}

Interval radian_pair(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) fail(where + "." + key, "missing required field");
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        fail(where + "." + key, "expected [lo, hi] radians");
    Interval iv{v[0].get<double>(), v[1].get<double>()};
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) fail(where + "." + key, "must be finite");
    return iv;
}

Behavior parse_behavior(const json& obj, const std::string& where) {
    if (!obj.contains("behavior")) fail(where + ".behavior", "missing required field");
    const json& v = obj.at("behavior");
    if (!v.is_string()) fail(where + ".behavior", "expected a string");
    std::string s = v.get<std::string>();
    if (s == "ANY") return Behavior::ANY;
    if (s == "ANGLE") return Behavior::ANGLE;
    if (s == "FULL") return Behavior::FULL;
    fail(where + ".behavior", "expected one of ANY, ANGLE, FULL");
}

TargetSpec parse_target(const json& t, const std::string& where) {
    if (!t.is_object()) fail(where, "expected an object");
    reject_unknown(t, {"id", "x_m", "y_m", "behavior", "loops", "tilt_rad", "azimuth_rad"},
                   where);

    TargetSpec spec;
    if (!t.contains("id") || !t.at("id").is_string()) fail(where + ".id", "expected a string");
    spec.id = t.at("id").get<std::string>();
    if (spec.id.empty()) fail(where + ".id", "must be nonempty");
    spec.location = {finite_number(t, "x_m", where), finite_number(t, "y_m", where)};
    spec.behavior = parse_behavior(t, where);

    if (!t.contains("loops")) fail(where + ".loops", "missing required field");
    const json& loops = t.at("loops");
    if (!loops.is_number_integer() || loops.get<long long>() < 0)
        fail(where + ".loops", "expected a non-negative integer");
    spec.loops = static_cast<int>(loops.get<long long>());

    Interval tilt = radian_pair(t, "tilt_rad", where);
    if (!(tilt.lo > 0.0)) fail(where + ".tilt_rad", "lower bound must be > 0");
    if (tilt.hi > kPi / 2.0 + 1e-12) fail(where + ".tilt_rad", "upper bound must be <= pi/2");
    if (tilt.hi > kPi / 2.0) tilt.hi = kPi / 2.0;
    if (tilt.lo > tilt.hi) fail(where + ".tilt_rad", "lower bound must be <= upper bound");
    spec.tilt_interval = tilt;

    bool has_azimuth = t.contains("azimuth_rad");
    if (spec.behavior == Behavior::ANGLE) {
        if (!has_azimuth)
            fail(where + ".azimuth_rad", "required when behavior is ANGLE");
        Interval az = radian_pair(t, "azimuth_rad", where);
        double extent = az.hi - az.lo;
        if (!(extent > 0.0)) fail(where + ".azimuth_rad", "extent must be > 0");
        if (extent > kTwoPi + 1e-9) fail(where + ".azimuth_rad", "extent must be <= 2*pi");
        spec.azimuth_interval = AngularInterval{normalize_angle(az.lo), std::min(extent, kTwoPi)};
    } else if (has_azimuth) {
        fail(where + ".azimuth_rad", "only allowed when behavior is ANGLE");
    }
    return spec;
}

}  // namespace

std::string_view to_string(Behavior b) {
    switch (b) {
        case Behavior::ANY: return "ANY";
        case Behavior::ANGLE: return "ANGLE";
        case Behavior::FULL: return "FULL";
    }
    return "ANY";
}

Mission parse_mission(const std::string& document) {
    json root = json::parse(document, nullptr, false);
    if (root.is_discarded()) fail("$", "invalid JSON");
    if (!root.is_object()) fail("$", "expected a JSON object");
    reject_unknown(root, {"uav", "targets"}, "$");

    if (!root.contains("uav") || !root.at("uav").is_object())
        fail("uav", "missing required object");
    const json& uav = root.at("uav");
    reject_unknown(uav, {"turn_radius_m", "altitude_m", "speed_mps", "start"}, "uav");

    Mission m;
    m.uav.turn_radius = finite_number(uav, "turn_radius_m", "uav");
    m.uav.altitude = finite_number(uav, "altitude_m", "uav");
    m.uav.speed = finite_number(uav, "speed_mps", "uav");
    if (m.uav.turn_radius <= 0.0) fail("uav.turn_radius_m", "must be > 0");
    if (m.uav.altitude <= 0.0) fail("uav.altitude_m", "must be > 0");
    if (m.uav.speed <= 0.0) fail("uav.speed_mps", "must be > 0");

    if (!uav.contains("start") || !uav.at("start").is_object())
        fail("uav.start", "missing required object");
    const json& start = uav.at("start");
    reject_unknown(start, {"x_m", "y_m", "heading_rad"}, "uav.start");
    m.uav.start = Configuration(finite_number(start, "x_m", "uav.start"),
                                finite_number(start, "y_m", "uav.start"),
                                finite_number(start, "heading_rad", "uav.start"));

    if (!root.contains("targets") || !root.at("targets").is_array())
        fail("targets", "missing required array");
    const json& targets = root.at("targets");
    if (targets.empty()) fail("targets", "at least one target is required");

    std::set<std::string> seen;
    for (size_t i = 0; i < targets.size(); ++i) {
        std::string where = "targets[" + std::to_string(i) + "]";
        TargetSpec spec = parse_target(targets[i], where);
        if (!seen.insert(spec.id).second) fail(where + ".id", "duplicate id '" + spec.id + "'");
        m.targets.push_back(std::move(spec));
    }
    return m;
}

std::string serialize_mission(const Mission& m) {
    json root;
    root["uav"] = {{"turn_radius_m", m.uav.turn_radius},
                   {"altitude_m", m.uav.altitude},
                   {"speed_mps", m.uav.speed},
                   {"start", {{"x_m", m.uav.start.position.x},
                              {"y_m", m.uav.start.position.y},
                              {"heading_rad", m.uav.start.heading}}}};
    json targets = json::array();
    for (const auto& t : m.targets) {
        json jt = {{"id", t.id},
                   {"x_m", t.location.x},
                   {"y_m", t.location.y},
                   {"behavior", std::string(to_string(t.behavior))},
                   {"loops", t.loops},
                   {"tilt_rad", {t.tilt_interval.lo, t.tilt_interval.hi}}};
        if (t.azimuth_interval)
            jt["azimuth_rad"] = {t.azimuth_interval->start,
                                 t.azimuth_interval->start + t.azimuth_interval->extent};
        targets.push_back(std::move(jt));
    }
    root["targets"] = std::move(targets);
    return root.dump(2);
}

std::vector<Finding> validate_mission(const Mission& m) {
    std::vector<Finding> findings;
    for (const auto& t : m.targets) {
        VisibilityRegion region = build_visibility_region(t, m.uav.altitude);
        if (!dwell_feasible(t, region, m.uav.turn_radius)) {
            findings.push_back(
                {t.id, "no radius-" + std::to_string(m.uav.turn_radius) +
                           " dwell loop fits inside the visibility region"});
        }
    }
    return findings;
}

}  // namespace dwelltour
