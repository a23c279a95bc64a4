#include "dwelltour/dubins.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dwelltour {
namespace {

// Snap window for the scaled-angle modulus. Values this close to a full turn
// are rounding artifacts of atan2 chains; snapping keeps endpoint error below
// r*5e-10 m, inside the 1e-6 m / 1e-9 rad reconstruction contract.
constexpr double kAngleSnap = 5e-10;

// CCC words need the outer turn-circle centers closer than 4r. The acos
// argument hits -1 exactly at that limit; reject with a little slack.
constexpr double kCccSlack = 1e-12;

// Tolerance for clamping tiny negative discriminants of CSC words.
constexpr double kDiscriminantSlack = 1e-12;

double mod2pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    if (kTwoPi - y < kAngleSnap) y = 0.0;
    return y;
}

struct WordParams {
    double t, p, q;  // scaled units: turns in radians, straight in d-units
};

// The six word solvers work in the normalized frame: start (0,0,alpha),
// goal (d,0,beta), unit turn radius.
std::optional<WordParams> solve_lsl(double a, double b, double d) {
    double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double p2 = 2.0 + d * d - 2.0 * std::cos(a - b) + 2.0 * d * (sa - sb);
    if (p2 < 0.0) {
        if (p2 < -kDiscriminantSlack) return std::nullopt;
        p2 = 0.0;
    }
    double tmp = std::atan2(cb - ca, d + sa - sb);
    return WordParams{mod2pi(-a + tmp), std::sqrt(p2), mod2pi(b - tmp)};
}

std::optional<WordParams> solve_rsr(double a, double b, double d) {
    double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double p2 = 2.0 + d * d - 2.0 * std::cos(a - b) + 2.0 * d * (sb - sa);
    if (p2 < 0.0) {
        if (p2 < -kDiscriminantSlack) return std::nullopt;
        p2 = 0.0;
    }
    double tmp = std::atan2(ca - cb, d - sa + sb);
    return WordParams{mod2pi(a - tmp), std::sqrt(p2), mod2pi(-b + tmp)};
}

std::optional<WordParams> solve_lsr(double a, double b, double d) {
    double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double p2 = -2.0 + d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sa + sb);
    if (p2 < 0.0) {
        if (p2 < -kDiscriminantSlack) return std::nullopt;
        p2 = 0.0;
    }
    double p = std::sqrt(p2);
    double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
    return WordParams{mod2pi(-a + tmp), p, mod2pi(-b + tmp)};
}

std::optional<WordParams> solve_rsl(double a, double b, double d) {
    double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double p2 = -2.0 + d * d + 2.0 * std::cos(a - b) - 2.0 * d * (sa + sb);
    if (p2 < 0.0) {
        if (p2 < -kDiscriminantSlack) return std::nullopt;
        p2 = 0.0;
    }
    double p = std::sqrt(p2);
    double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
    return WordParams{mod2pi(a - tmp), p, mod2pi(b - tmp)};
}

std::optional<WordParams> solve_rlr(double a, double b, double d) {
    double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double tmp = (6.0 - d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sa - sb)) / 8.0;
    if (tmp < -1.0 + kCccSlack) return std::nullopt;
    if (tmp > 1.0) tmp = 1.0;
    double p = mod2pi(kTwoPi - std::acos(tmp));
    double t = mod2pi(a - std::atan2(ca - cb, d - sa + sb) + p * 0.5);
    double q = mod2pi(a - b - t + p);
    return WordParams{t, p, q};
}

std::optional<WordParams> solve_lrl(double a, double b, double d) {
    double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    double tmp = (6.0 - d * d + 2.0 * std::cos(a - b) + 2.0 * d * (sb - sa)) / 8.0;
    if (tmp < -1.0 + kCccSlack) return std::nullopt;
    if (tmp > 1.0) tmp = 1.0;
    double p = mod2pi(kTwoPi - std::acos(tmp));
    double t = mod2pi(-a + std::atan2(cb - ca, d + sa - sb) + p * 0.5);
    double q = mod2pi(b - a - t + p);
    return WordParams{t, p, q};
}

constexpr std::array<DubinsWord, 6> kWordOrder{DubinsWord::LSL, DubinsWord::LSR,
                                               DubinsWord::RSL, DubinsWord::RSR,
                                               DubinsWord::RLR, DubinsWord::LRL};

std::optional<WordParams> solve_word(DubinsWord w, double a, double b, double d) {
    switch (w) {
        case DubinsWord::LSL: return solve_lsl(a, b, d);
        case DubinsWord::LSR: return solve_lsr(a, b, d);
        case DubinsWord::RSL: return solve_rsl(a, b, d);
        case DubinsWord::RSR: return solve_rsr(a, b, d);
        case DubinsWord::RLR: return solve_rlr(a, b, d);
        case DubinsWord::LRL: return solve_lrl(a, b, d);
    }
    return std::nullopt;
}

constexpr std::string_view kWordNames[6] = {"LSL", "LSR", "RSL", "RSR", "RLR", "LRL"};

DubinsPath make_path(DubinsWord w, const WordParams& wp, double r) {
    DubinsPath path;
    path.word = w;
    path.turn_radius = r;
    bool middle_straight = (w == DubinsWord::LSL || w == DubinsWord::LSR ||
                            w == DubinsWord::RSL || w == DubinsWord::RSR);
    // wp.p is in scaled units either way (straight d-units or middle-turn
    // radians), so the full length is (t + p + q) * r.
    path.segment_params = {wp.t, middle_straight ? wp.p * r : wp.p, wp.q};
    path.total_length = (wp.t + wp.p + wp.q) * r;
    return path;
}

Configuration advance(Configuration c, char kind, double length_m, double r) {
    double th = c.heading;
    if (kind == 'S') {
        c.position = c.position + dir(th) * length_m;
    } else if (kind == 'L') {
        double u = length_m / r;
        c.position.x += r * (std::sin(th + u) - std::sin(th));
        c.position.y -= r * (std::cos(th + u) - std::cos(th));
        c.heading = normalize_angle(th + u);
    } else {
        double u = length_m / r;
        c.position.x += r * (std::sin(th) - std::sin(th - u));
        c.position.y += r * (std::cos(th - u) - std::cos(th));
        c.heading = normalize_angle(th - u);
    }
    return c;
}

}  // namespace

bool approx_same(const Configuration& a, const Configuration& b, double tol) {
    return distance(a.position, b.position) <= tol &&
           angular_distance(a.heading, b.heading) <= tol;
}

std::string_view to_string(DubinsWord w) { return kWordNames[static_cast<int>(w)]; }

char DubinsPath::segment_kind(int index) const {
    return to_string(word)[static_cast<size_t>(index)];
}

double DubinsPath::segment_length(int index) const {
    return segment_kind(index) == 'S' ? segment_params[static_cast<size_t>(index)]
                                      : segment_params[static_cast<size_t>(index)] * turn_radius;
}

std::vector<DubinsPath> dubins_all_paths(const Configuration& from, const Configuration& to,
                                         double turn_radius) {
    if (turn_radius <= 0.0) throw std::invalid_argument("turn_radius must be > 0");
    std::vector<DubinsPath> out;
    if (approx_same(from, to)) {
        DubinsPath zero;
        zero.turn_radius = turn_radius;
        out.push_back(zero);
        return out;
    }
    Vec2 delta = to.position - from.position;
    double d = delta.norm() / turn_radius;
    double phi = std::atan2(delta.y, delta.x);
    double a = mod2pi(from.heading - phi);
    double b = mod2pi(to.heading - phi);
    for (DubinsWord w : kWordOrder) {
        if (auto wp = solve_word(w, a, b, d)) out.push_back(make_path(w, *wp, turn_radius));
    }
    return out;
}

DubinsPath dubins_shortest_path(const Configuration& from, const Configuration& to,
                                double turn_radius) {
    auto candidates = dubins_all_paths(from, to, turn_radius);
    const DubinsPath* best = &candidates.front();
    for (const auto& c : candidates)
        if (c.total_length < best->total_length) best = &c;
    return *best;
}

double dubins_time(const Configuration& from, const Configuration& to,
                   double turn_radius, double speed) {
    if (speed <= 0.0) throw std::invalid_argument("speed must be > 0");
    return dubins_shortest_path(from, to, turn_radius).total_length / speed;
}

Configuration dubins_endpoint(const DubinsPath& path, const Configuration& from) {
    Configuration c = from;
    for (int i = 0; i < 3; ++i)
        c = advance(c, path.segment_kind(i), path.segment_length(i), path.turn_radius);
    return c;
}

Configuration dubins_point_at(const DubinsPath& path, const Configuration& from, double s) {
    s = std::clamp(s, 0.0, path.total_length);
    Configuration c = from;
    for (int i = 0; i < 3; ++i) {
        double len = path.segment_length(i);
        if (s <= len) return advance(c, path.segment_kind(i), s, path.turn_radius);
        c = advance(c, path.segment_kind(i), len, path.turn_radius);
        s -= len;
    }
    return c;
}

std::vector<Configuration> sample_path_points(const DubinsPath& path,
                                              const Configuration& from, double step) {
    if (step <= 0.0) throw std::invalid_argument("step must be > 0");
    double total = path.total_length;
    if (total <= 0.0) return {from};
    int n = std::max(1, static_cast<int>(std::ceil(total / step - 1e-9)));
    std::vector<Configuration> points;
    points.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        points.push_back(dubins_point_at(path, from, total * k / n));
    return points;
}

}  // namespace dwelltour
