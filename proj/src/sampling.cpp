#include "dwelltour/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace dwelltour {
namespace {

constexpr double kDedupTol = 1e-9;

// Grid values {lo, lo + step, ...} up to hi; hi itself is always included.
std::vector<double> closed_grid(double lo, double hi, double step) {
    std::vector<double> values;
    if (lo > hi + kDedupTol) return values;
    for (int k = 0;; ++k) {
        double v = lo + step * k;
        if (v > hi - kDedupTol) break;
        values.push_back(v);
    }
    if (values.empty() || std::fabs(values.back() - hi) > kDedupTol) values.push_back(hi);
    return values;
}

// Grid values {base, base + step, ...} spanning a full circle, no wrap duplicate.
std::vector<double> circular_grid(double base, double step) {
    std::vector<double> values;
    for (int k = 0;; ++k) {
        double v = step * k;
        if (v >= kTwoPi - 1e-12) break;
        values.push_back(normalize_angle(base + v));
    }
    return values;
}

std::vector<double> bearing_grid(const AngularInterval& angular, double step) {
    if (angular.is_full()) return circular_grid(angular.start, step);
    std::vector<double> offs = closed_grid(0.0, angular.extent, step);
    std::vector<double> values;
    values.reserve(offs.size());
    for (double o : offs) values.push_back(normalize_angle(angular.start + o));
    return values;
}

// Deduplicates candidates on (position, heading) while preserving insert order.
class ConfigDedup {
public:
    bool insert(const Configuration& c) {
        auto key = quantize(c.position);
        for (int dx = -1; dx <= 1; ++dx) {
            for (int dy = -1; dy <= 1; ++dy) {
                auto it = buckets_.find({key.first + dx, key.second + dy});
                if (it == buckets_.end()) continue;
                for (const Configuration& seen : it->second)
                    if (approx_same(seen, c, kDedupTol)) return false;
            }
        }
        buckets_[key].push_back(c);
        return true;
    }

private:
    struct KeyHash {
        size_t operator()(const std::pair<long long, long long>& k) const {
            return std::hash<long long>()(k.first * 1000003LL ^ k.second);
        }
    };
    static std::pair<long long, long long> quantize(const Vec2& p) {
        return {static_cast<long long>(std::floor(p.x * 1e6)),
                static_cast<long long>(std::floor(p.y * 1e6))};
    }
    std::unordered_map<std::pair<long long, long long>, std::vector<Configuration>, KeyHash>
        buckets_;
};

}  // namespace

SpacingParams spacing_preset(int condition) {
    static const SpacingParams presets[7] = {
        {1000.0, kPi, kPi},          {500.0, kPi, kPi},
        {500.0, kPi / 2, kPi / 2},   {250.0, kPi / 2, kPi / 2},
        {250.0, kPi / 4, kPi / 4},   {125.0, kPi / 4, kPi / 4},
        {125.0, kPi / 8, kPi / 8},
    };
    if (condition < 1 || condition > 7)
        throw std::invalid_argument("spacing condition must be in 1..7");
    return presets[condition - 1];
}

int spacing_preset_count() { return 7; }

SpacingParams parse_spacing(const std::string& text) {
    if (text.rfind("condition", 0) == 0) {
        int c = std::stoi(text.substr(9));
        return spacing_preset(c);
    }
    SpacingParams sp;
    bool have_r = false, have_t = false, have_a = false;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("bad spacing item '" + item + "'");
        std::string key = item.substr(0, eq);
        double value = std::stod(item.substr(eq + 1));
        if (key == "dr") { sp.delta_r = value; have_r = true; }
        else if (key == "dtheta") { sp.delta_theta = value; have_t = true; }
        else if (key == "dalpha") { sp.delta_alpha = value; have_a = true; }
        else throw std::invalid_argument("unknown spacing key '" + key + "'");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (!have_r || !have_t || !have_a)
        throw std::invalid_argument("spacing needs dr=, dtheta=, dalpha=");
    if (sp.delta_r <= 0 || sp.delta_theta <= 0 || sp.delta_alpha <= 0)
        throw std::invalid_argument("spacing values must be > 0");
    return sp;
}

std::vector<SampledNode> sample_target(const TargetSpec& t, const VisibilityRegion& region,
                                       const UavParams& uav, const SpacingParams& sp) {
    if (sp.delta_r <= 0 || sp.delta_theta <= 0 || sp.delta_alpha <= 0)
        throw std::invalid_argument("spacing values must be > 0");

    std::vector<SampledNode> nodes;
    ConfigDedup dedup;
    auto emit = [&](const Configuration& c, const DwellLoop& loop) {
        if (!dedup.insert(c)) return;
        SampledNode node;
        node.config = c;
        node.loop = loop;
        node.dwell_seconds = dwell_time(loop, uav.speed);
        nodes.push_back(std::move(node));
    };

    if (t.behavior == Behavior::FULL && t.loops > 0) {
        // Orbit radii must admit the turn radius; both tangent headings per
        // on-circle location. delta_alpha plays no role here.
        double lo = std::max(uav.turn_radius, region.r_min);
        if (lo > region.r_max + 1e-9) return nodes;
        for (double rho : closed_grid(lo, region.r_max, sp.delta_r)) {
            for (double b : circular_grid(0.0, sp.delta_theta)) {
                Vec2 pos = region.center + dir(b) * rho;
                double ccw = normalize_angle(b + kPi / 2.0);
                double cw = normalize_angle(b - kPi / 2.0);
                DwellLoop ccw_loop{DwellKind::ORBIT_TARGET, region.center, rho,
                                   OrbitDirection::CCW, t.loops};
                DwellLoop cw_loop{DwellKind::ORBIT_TARGET, region.center, rho,
                                  OrbitDirection::CW, t.loops};
                if (ccw <= cw) {
                    emit(Configuration(pos, ccw), ccw_loop);
                    emit(Configuration(pos, cw), cw_loop);
                } else {
                    emit(Configuration(pos, cw), cw_loop);
                    emit(Configuration(pos, ccw), ccw_loop);
                }
            }
        }
        return nodes;
    }

    if (t.loops == 0) {
        // Overfly targets: every location in the region with any heading is a
        // valid dwell start, so grid locations (polar) against headings.
        std::vector<double> headings = circular_grid(0.0, sp.delta_alpha);
        for (double rho : closed_grid(region.r_min, region.r_max, sp.delta_r)) {
            for (double b : bearing_grid(region.angular, sp.delta_theta)) {
                Vec2 pos = region.center + dir(b) * rho;
                for (double h : headings) emit(Configuration(pos, h), DwellLoop{});
            }
        }
        return nodes;
    }

    // ANY/ANGLE with loops > 0: grid the maneuver parameterization directly.
    // A pivot sits at distance d from the target inside the eroded annulus,
    // at a bearing whose window shrinks by asin(r/d) on each side for
    // sectors; the tangent-point angle runs at delta_alpha with both loop
    // directions per tangent point. Loops attach through config_in_dwl so
    // the left-preference rule stays authoritative.
    double r = uav.turn_radius;
    double d_lo = region.r_min + r;
    double d_hi = region.r_max - r;
    if (d_lo > d_hi + 1e-9) return nodes;
    std::vector<double> tangents = circular_grid(0.0, sp.delta_alpha);
    for (double d : closed_grid(d_lo, d_hi, sp.delta_r)) {
        std::vector<double> pivot_bearings;
        if (region.angular.is_full()) {
            pivot_bearings = circular_grid(region.angular.start, sp.delta_theta);
        } else {
            double half = std::asin(std::min(1.0, r / d));
            double window = region.angular.extent - 2.0 * half;
            if (window < -1e-12) continue;
            for (double off : closed_grid(0.0, std::max(window, 0.0), sp.delta_theta))
                pivot_bearings.push_back(normalize_angle(region.angular.start + half + off));
        }
        for (double b : pivot_bearings) {
            Vec2 pivot = region.center + dir(b) * d;
            if (!circle_in_region(pivot, r, region)) continue;
            for (double phi : tangents) {
                Vec2 pos = pivot + dir(phi) * r;
                double ccw = normalize_angle(phi + kPi / 2.0);
                double cw = normalize_angle(phi - kPi / 2.0);
                for (double h : ccw <= cw ? std::array{ccw, cw} : std::array{cw, ccw}) {
                    Configuration c(pos, h);
                    if (auto loop = config_in_dwl(c, t, region, r)) emit(c, *loop);
                }
            }
        }
    }
    return nodes;
}

SampleResult sample_mission(const Mission& m, const SpacingParams& sp) {
    SampleResult result;
    int next_id = 0;
    for (size_t j = 0; j < m.targets.size(); ++j) {
        VisibilityRegion region = build_visibility_region(m.targets[j], m.uav.altitude);
        std::vector<SampledNode> nodes = sample_target(m.targets[j], region, m.uav, sp);
        result.per_target_counts.push_back(static_cast<int>(nodes.size()));
        if (nodes.empty()) result.empty_targets.push_back(m.targets[j].id);
        for (auto& node : nodes) {
            node.node_id = next_id++;
            node.target_index = static_cast<int>(j);
            result.nodes.push_back(std::move(node));
        }
    }
    return result;
}

}  // namespace dwelltour
