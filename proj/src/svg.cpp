#include "dwelltour/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace dwelltour {
namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf"};

struct Bounds {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = std::numeric_limits<double>::infinity();
    double max_x = -std::numeric_limits<double>::infinity();
    double max_y = -std::numeric_limits<double>::infinity();

    void add(double x, double y) {
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
    }
    void add_circle(const Vec2& c, double r) {
        add(c.x - r, c.y - r);
        add(c.x + r, c.y + r);
    }
};

// World-to-view transform with flipped y (SVG y grows downward).
class View {
public:
    View(const Bounds& b, double width) {
        double span_x = std::max(b.max_x - b.min_x, 1.0);
        double span_y = std::max(b.max_y - b.min_y, 1.0);
        scale_ = (width - 2 * kMargin) / std::max(span_x, span_y);
        min_x_ = b.min_x;
        max_y_ = b.max_y;
        width_ = 2 * kMargin + span_x * scale_;
        height_ = 2 * kMargin + span_y * scale_;
    }
    double x(double wx) const { return kMargin + (wx - min_x_) * scale_; }
    double y(double wy) const { return kMargin + (max_y_ - wy) * scale_; }
    double s(double w) const { return w * scale_; }
    double width() const { return width_; }
    double height() const { return height_; }

private:
    static constexpr double kMargin = 30.0;
    double scale_ = 1.0, min_x_ = 0.0, max_y_ = 0.0, width_ = 0.0, height_ = 0.0;
};

void polyline(std::ostringstream& out, const View& view,
              const std::vector<Configuration>& points, const char* color, double width,
              const char* dash = nullptr) {
    if (points.empty()) return;
    out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << " d=\"";
    for (size_t i = 0; i < points.size(); ++i)
        out << (i == 0 ? 'M' : 'L') << fmt(view.x(points[i].position.x)) << ' '
            << fmt(view.y(points[i].position.y));
    out << "\"/>\n";
}

void circle(std::ostringstream& out, const View& view, const Vec2& c, double r,
            const char* color, double width, const char* dash = nullptr) {
    out << "<circle cx=\"" << fmt(view.x(c.x)) << "\" cy=\"" << fmt(view.y(c.y)) << "\" r=\""
        << fmt(view.s(r)) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
        << width << "\"";
    if (dash) out << " stroke-dasharray=\"" << dash << "\"";
    out << "/>\n";
}

void sector_outline(std::ostringstream& out, const View& view, const VisibilityRegion& region,
                    const char* color) {
    double a0 = region.angular.start;
    double a1 = region.angular.start + region.angular.extent;
    auto pt = [&](double radius, double ang) {
        return Vec2{region.center.x + radius * std::cos(ang),
                    region.center.y + radius * std::sin(ang)};
    };
    int large = region.angular.extent > kPi ? 1 : 0;
    Vec2 p0 = pt(region.r_max, a0), p1 = pt(region.r_max, a1);
    Vec2 q0 = pt(region.r_min, a1), q1 = pt(region.r_min, a0);
    out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" d=\"";
    out << 'M' << fmt(view.x(p0.x)) << ' ' << fmt(view.y(p0.y));
    // sweep flag 0: counter-clockwise in world coordinates under flipped y
    out << 'A' << fmt(view.s(region.r_max)) << ' ' << fmt(view.s(region.r_max)) << " 0 " << large
        << " 0 " << fmt(view.x(p1.x)) << ' ' << fmt(view.y(p1.y));
    out << 'L' << fmt(view.x(q0.x)) << ' ' << fmt(view.y(q0.y));
    if (region.r_min > 0)
        out << 'A' << fmt(view.s(region.r_min)) << ' ' << fmt(view.s(region.r_min)) << " 0 "
            << large << " 1 " << fmt(view.x(q1.x)) << ' ' << fmt(view.y(q1.y));
    out << "Z\"/>\n";
}

}  // namespace

std::string route_svg(const Mission& m, const std::vector<VisibilityRegion>& regions,
                      const RoadmapGraph& g, const PlanResult& result) {
    Bounds bounds;
    bounds.add(m.uav.start.position.x, m.uav.start.position.y);
    for (const auto& region : regions) bounds.add_circle(region.center, region.r_max);
    for (const auto& c : result.initial_maneuver) bounds.add(c.position.x, c.position.y);
    for (const auto& c : result.closed_route) bounds.add(c.position.x, c.position.y);
    View view(bounds, 900.0);

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(view.width()) << ' '
        << fmt(view.height()) << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (size_t j = 0; j < regions.size(); ++j) {
        const auto& region = regions[j];
        if (region.angular.is_full()) {
            circle(out, view, region.center, region.r_max, "#999999", 1.0);
            if (region.r_min > 0) circle(out, view, region.center, region.r_min, "#999999", 1.0);
        } else {
            sector_outline(out, view, region, "#999999");
        }
        out << "<circle cx=\"" << fmt(view.x(region.center.x)) << "\" cy=\""
            << fmt(view.y(region.center.y)) << "\" r=\"3\" fill=\"#333333\"/>\n";
        out << "<text x=\"" << fmt(view.x(region.center.x) + 6) << "\" y=\""
            << fmt(view.y(region.center.y) - 6) << "\" font-size=\"12\">"
            << m.targets[j].id << "</text>\n";
    }

    // dwell circles of the visited nodes
    for (const auto& leg : result.per_leg) {
        const auto& loop = g.nodes[static_cast<size_t>(leg.from_node)].loop;
        if (loop.kind != DwellKind::NONE && loop.loops > 0)
            circle(out, view, loop.center, loop.radius, "#2ca02c", 1.0, "5,4");
    }

    polyline(out, view, result.closed_route, "#1f77b4", 1.8);
    polyline(out, view, result.initial_maneuver, "#d62728", 1.8);

    const Vec2& start = m.uav.start.position;
    Vec2 tip = start + dir(m.uav.start.heading) * (16.0 / std::max(view.s(1.0), 1e-9));
    out << "<circle cx=\"" << fmt(view.x(start.x)) << "\" cy=\"" << fmt(view.y(start.y))
        << "\" r=\"4\" fill=\"#d62728\"/>\n";
    out << "<line x1=\"" << fmt(view.x(start.x)) << "\" y1=\"" << fmt(view.y(start.y))
        << "\" x2=\"" << fmt(view.x(tip.x)) << "\" y2=\"" << fmt(view.y(tip.y))
        << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    out << "</svg>\n";
    return out.str();
}

std::string chart_svg(const std::string& title, const std::string& x_label,
                      const std::string& y_label, const std::vector<LabeledSeries>& series,
                      bool step_curve) {
    constexpr double kW = 720.0, kH = 480.0, kPad = 60.0;
    Bounds bounds;
    for (const auto& s : series)
        for (auto [x, y] : s.points) bounds.add(x, y);
    if (!std::isfinite(bounds.min_x)) bounds = Bounds{0, 0, 1, 1};
    if (bounds.max_x == bounds.min_x) bounds.max_x = bounds.min_x + 1;
    if (bounds.max_y == bounds.min_y) bounds.max_y = bounds.min_y + 1;

    auto px = [&](double x) {
        return kPad + (x - bounds.min_x) / (bounds.max_x - bounds.min_x) * (kW - 2 * kPad);
    };
    auto py = [&](double y) {
        return kH - kPad - (y - bounds.min_y) / (bounds.max_y - bounds.min_y) * (kH - 2 * kPad);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kW << ' ' << kH
        << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n";
    out << "<line x1=\"" << kPad << "\" y1=\"" << kH - kPad << "\" x2=\"" << kW - kPad
        << "\" y2=\"" << kH - kPad << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kPad << "\" y1=\"" << kPad << "\" x2=\"" << kPad << "\" y2=\""
        << kH - kPad << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 16
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kH / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
        << kH / 2 << ")\" text-anchor=\"middle\">" << y_label << "</text>\n";
    out << "<text x=\"" << kPad << "\" y=\"" << kH - kPad + 16 << "\" font-size=\"10\">"
        << fmt(bounds.min_x) << "</text>\n";
    out << "<text x=\"" << kW - kPad << "\" y=\"" << kH - kPad + 16
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(bounds.max_x) << "</text>\n";
    out << "<text x=\"" << kPad - 4 << "\" y=\"" << kH - kPad
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(bounds.min_y) << "</text>\n";
    out << "<text x=\"" << kPad - 4 << "\" y=\"" << kPad
        << "\" text-anchor=\"end\" font-size=\"10\">" << fmt(bounds.max_y) << "</text>\n";

    for (size_t s = 0; s < series.size(); ++s) {
        const char* color = kSeriesColors[s % 7];
        const auto& pts = series[s].points;
        if (!pts.empty()) {
            out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
            for (size_t i = 0; i < pts.size(); ++i) {
                if (i == 0) {
                    out << 'M' << fmt(px(pts[i].first)) << ' ' << fmt(py(pts[i].second));
                } else if (step_curve) {
                    out << 'L' << fmt(px(pts[i].first)) << ' ' << fmt(py(pts[i - 1].second))
                        << 'L' << fmt(px(pts[i].first)) << ' ' << fmt(py(pts[i].second));
                } else {
                    out << 'L' << fmt(px(pts[i].first)) << ' ' << fmt(py(pts[i].second));
                }
            }
            out << "\"/>\n";
            for (const auto& [x, y] : pts)
                out << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
                    << "\" r=\"2\" fill=\"" << color << "\"/>\n";
        }
        out << "<text x=\"" << kW - kPad + 4 << "\" y=\"" << kPad + 14 * static_cast<double>(s)
            << "\" font-size=\"11\" fill=\"" << color << "\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace dwelltour
