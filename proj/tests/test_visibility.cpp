#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dwelltour/visibility.hpp"
#include "test_support.hpp"

using namespace dwelltour;
using testsupport::Rng;

namespace {

TargetSpec make_target(Behavior behavior, int loops, Interval tilt,
                       std::optional<AngularInterval> azimuth = std::nullopt) {
    TargetSpec t;
    t.id = "T";
    t.location = {0.0, 0.0};
    t.behavior = behavior;
    t.loops = loops;
    t.tilt_interval = tilt;
    t.azimuth_interval = azimuth;
    return t;
}

// Independent check sampling points of the circle curve.
bool circle_in_region_sampled(const Vec2& center, double radius,
                              const VisibilityRegion& region, int samples = 720) {
    for (int k = 0; k < samples; ++k) {
        double ang = kTwoPi * k / samples;
        if (!region.contains(center + dir(ang) * radius)) return false;
    }
    return true;
}

// True when the pair sits near a decision boundary of any containment
// criterion; there the coarse sampled oracle can disagree legitimately.
bool near_decision_boundary(const Vec2& center, double radius,
                            const VisibilityRegion& region) {
    double d = distance(center, region.center);
    if (std::fabs(std::fabs(d - radius) - region.r_min) < 1.0) return true;
    if (std::fabs(region.r_max - (d + radius)) < 1.0) return true;
    if (!region.angular.is_full()) {
        if (std::fabs(d - radius) < 1.0) return true;  // circle grazes the center
        if (d > radius) {
            double half = std::asin(std::min(1.0, radius / d));
            double off = normalize_angle(bearing(center - region.center) - half -
                                         region.angular.start);
            if (std::fabs(off + 2.0 * half - region.angular.extent) < 0.02) return true;
            if (kTwoPi - off < 0.02) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("radial limits follow altitude over tan(tilt)") {
    auto t = make_target(Behavior::ANY, 0, {kPi / 8.0, 3.0 * kPi / 8.0});
    VisibilityRegion region = build_visibility_region(t, 1000.0);
    CHECK(region.r_min == doctest::Approx(414.2135623730951).epsilon(1e-9));
    CHECK(region.r_max == doctest::Approx(2414.2135623730949).epsilon(1e-9));
    CHECK(region.angular.is_full());

    auto t2 = make_target(Behavior::ANY, 0, {kPi / 6.0, kPi / 3.0});
    VisibilityRegion region2 = build_visibility_region(t2, 1000.0);
    CHECK(region2.r_min == doctest::Approx(577.3502691896258).epsilon(1e-9));
    CHECK(region2.r_max == doctest::Approx(1732.0508075688772).epsilon(1e-9));

    auto t3 = make_target(Behavior::ANY, 0, {kPi / 4.0, kPi / 2.0});
    VisibilityRegion region3 = build_visibility_region(t3, 1000.0);
    CHECK(region3.r_min == 0.0);  // tan(pi/2) limit: disk, not annulus
    CHECK(region3.r_max == doctest::Approx(1000.0).epsilon(1e-9));
}

TEST_CASE("sector regions carry the azimuth interval") {
    auto t = make_target(Behavior::ANGLE, 0, {kPi / 8.0, 3.0 * kPi / 8.0},
                         AngularInterval{kPi / 4.0, kPi / 2.0});
    VisibilityRegion region = build_visibility_region(t, 1000.0);
    CHECK_FALSE(region.angular.is_full());
    CHECK(region.contains(dir(kPi / 2.0) * 1000.0));
    CHECK_FALSE(region.contains(dir(0.0) * 1000.0));  // outside the sector
    CHECK_FALSE(region.contains(dir(kPi / 2.0) * 100.0));  // inside the hole
}

TEST_CASE("circle containment closed form") {
    VisibilityRegion disk;
    disk.center = {0.0, 0.0};
    disk.r_min = 0.0;
    disk.r_max = 2000.0;
    CHECK(circle_in_region({0.0, 0.0}, 1000.0, disk));  // concentric

    VisibilityRegion annulus;
    annulus.center = {0.0, 0.0};
    annulus.r_min = 414.2;
    annulus.r_max = 2414.2;
    CHECK(circle_in_region({1414.2, 0.0}, 750.0, annulus));
    // encircling the hole with clearance on both sides still counts
    CHECK(circle_in_region({100.0, 0.0}, 750.0, annulus));
    CHECK_FALSE(circle_in_region({100.0, 0.0}, 450.0, annulus));   // dips into the hole
    CHECK_FALSE(circle_in_region({2000.0, 0.0}, 750.0, annulus));  // spills outside

    VisibilityRegion sector = annulus;
    sector.r_min = 0.0;
    sector.angular = AngularInterval{0.0, kPi / 2.0};
    // circle at distance 1000 subtending half-angle asin(0.75) ~ 0.848 rad:
    // the spread 1.696 exceeds the sector extent
    CHECK_FALSE(circle_in_region(dir(kPi / 4.0) * 1000.0, 750.0, sector));
    // a slim circle deep inside the sector fits
    CHECK(circle_in_region(dir(kPi / 4.0) * 1500.0, 100.0, sector));
}

TEST_CASE("circle containment agrees with a 720-point sample") {
    Rng rng(31);
    int checked = 0;
    while (checked < 1000) {
        VisibilityRegion region;
        region.center = {rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
        region.r_min = rng.uniform(0.0, 1000.0);
        region.r_max = region.r_min + rng.uniform(100.0, 2500.0);
        if (rng.uniform() < 0.5)
            region.angular = AngularInterval{rng.uniform(0.0, kTwoPi - 1e-9),
                                             rng.uniform(0.3, 6.0)};
        Vec2 center = region.center + dir(rng.uniform(0.0, kTwoPi)) *
                                          rng.uniform(0.0, region.r_max * 1.1);
        double radius = rng.uniform(10.0, region.r_max);
        if (near_decision_boundary(center, radius, region))
            continue;  // the sampled oracle is blind on razor-thin margins
        CHECK(circle_in_region(center, radius, region) ==
              circle_in_region_sampled(center, radius, region));
        ++checked;
    }
}

TEST_CASE("dwell feasibility") {
    SUBCASE("ANY with loops fits iff the annulus is two turn radii wide") {
        auto t = make_target(Behavior::ANY, 1, {kPi / 8.0, 3.0 * kPi / 8.0});
        VisibilityRegion region = build_visibility_region(t, 1000.0);
        CHECK(dwell_feasible(t, region, 750.0));       // width 2000 >= 1500
        CHECK_FALSE(dwell_feasible(t, region, 1100.0));  // width 2000 < 2200
    }
    SUBCASE("FULL needs an orbit radius above both bounds") {
        auto t = make_target(Behavior::FULL, 2, {kPi / 8.0, 3.0 * kPi / 8.0});
        VisibilityRegion region = build_visibility_region(t, 1000.0);
        CHECK(dwell_feasible(t, region, 750.0));
        region.r_max = 500.0;
        CHECK_FALSE(dwell_feasible(t, region, 750.0));
    }
    SUBCASE("loops=0 is always feasible") {
        auto t = make_target(Behavior::ANY, 0, {kPi / 2.0 - 1e-5, kPi / 2.0});
        VisibilityRegion region = build_visibility_region(t, 1000.0);
        CHECK(dwell_feasible(t, region, 750.0));
    }
    SUBCASE("narrow sectors reject the pivot circle") {
        auto t = make_target(Behavior::ANGLE, 1, {kPi / 8.0, 3.0 * kPi / 8.0},
                             AngularInterval{0.0, 0.2});
        VisibilityRegion region = build_visibility_region(t, 1000.0);
        CHECK_FALSE(dwell_feasible(t, region, 750.0));
        auto wide = make_target(Behavior::ANGLE, 1, {kPi / 8.0, 3.0 * kPi / 8.0},
                                AngularInterval{0.0, kPi});
        VisibilityRegion wide_region = build_visibility_region(wide, 1000.0);
        CHECK(dwell_feasible(wide, wide_region, 750.0));
    }
}

TEST_CASE("configuration membership in the dwell set") {
    SUBCASE("loops=0 admits any heading inside the region") {
        auto t = make_target(Behavior::ANY, 0, {kPi / 8.0, 3.0 * kPi / 8.0});
        VisibilityRegion region = build_visibility_region(t, 1000.0);
        auto loop = config_in_dwl(Configuration(1000.0, 0.0, 2.5), t, region, 750.0);
        REQUIRE(loop.has_value());
        CHECK(loop->kind == DwellKind::NONE);
        CHECK_FALSE(config_in_dwl(Configuration(100.0, 0.0, 2.5), t, region, 750.0));
    }
    SUBCASE("FULL requires tangency and a radial band") {
        auto t = make_target(Behavior::FULL, 2, {kPi / 8.0, 3.0 * kPi / 8.0});
        VisibilityRegion region = build_visibility_region(t, 1000.0);
        Configuration tangent(1000.0, 0.0, kPi / 2.0);  // CCW tangent at bearing 0
        auto loop = config_in_dwl(tangent, t, region, 750.0);
        REQUIRE(loop.has_value());
        CHECK(loop->kind == DwellKind::ORBIT_TARGET);
        CHECK(loop->radius == doctest::Approx(1000.0));
        CHECK(loop->direction == OrbitDirection::CCW);
        // non-tangent heading fails
        CHECK_FALSE(config_in_dwl(Configuration(1000.0, 0.0, 0.3), t, region, 750.0));
        // radius below the turn radius fails even inside the annulus
        CHECK_FALSE(config_in_dwl(Configuration(500.0, 0.0, kPi / 2.0), t, region, 750.0));
    }
    SUBCASE("pivot loops prefer the left circle") {
        auto t = make_target(Behavior::ANY, 1, {kPi / 8.0, 3.0 * kPi / 8.0});
        VisibilityRegion region = build_visibility_region(t, 1000.0);
        // radial heading at mid-annulus: both pivot circles sit broadside and fit
        Configuration v(1414.2, 0.0, 0.0);
        CHECK(circle_in_region(left_pivot(v, 750.0), 750.0, region));
        CHECK(circle_in_region(right_pivot(v, 750.0), 750.0, region));
        auto loop = config_in_dwl(v, t, region, 750.0);
        REQUIRE(loop.has_value());
        CHECK(loop->kind == DwellKind::ORBIT_PIVOT);
        CHECK(loop->direction == OrbitDirection::CCW);
        CHECK(loop->radius == doctest::Approx(750.0));
    }
}

TEST_CASE("returned loops lie inside the region") {
    Rng rng(53);
    int found = 0;
    for (int trial = 0; trial < 4000 && found < 300; ++trial) {
        Behavior behavior = rng.uniform() < 0.5 ? Behavior::ANY : Behavior::FULL;
        auto t = make_target(behavior, rng.uniform_int(1, 3),
                             {kPi / 8.0, rng.uniform(0.6, kPi / 2.0)});
        VisibilityRegion region = build_visibility_region(t, 1000.0);
        Configuration v(region.center + dir(rng.uniform(0.0, kTwoPi)) *
                                            rng.uniform(region.r_min, region.r_max),
                        rng.uniform(0.0, kTwoPi));
        if (behavior == Behavior::FULL) {
            // construct tangent headings so some trials pass
            double b = bearing(v.position - region.center);
            v = Configuration(v.position, rng.uniform() < 0.5 ? b + kPi / 2.0 : b - kPi / 2.0);
        }
        auto loop = config_in_dwl(v, t, region, 400.0);
        if (!loop || loop->kind == DwellKind::NONE) continue;
        ++found;
        CHECK(circle_in_region(loop->center, loop->radius, region));
    }
    CHECK(found >= 300);
}

TEST_CASE("dwell time scales with loops and radius") {
    DwellLoop none;
    CHECK(dwell_time(none, 39.0) == 0.0);

    DwellLoop orbit{DwellKind::ORBIT_TARGET, {0.0, 0.0}, 1000.0, OrbitDirection::CCW, 2};
    CHECK(dwell_time(orbit, 39.0) == doctest::Approx(4.0 * kPi * 1000.0 / 39.0).epsilon(1e-12));

    DwellLoop pivot{DwellKind::ORBIT_PIVOT, {0.0, 0.0}, 750.0, OrbitDirection::CW, 1};
    CHECK(dwell_time(pivot, 39.0) == doctest::Approx(2.0 * kPi * 750.0 / 39.0).epsilon(1e-12));

    // linearity
    DwellLoop doubled = orbit;
    doubled.loops *= 3;
    CHECK(dwell_time(doubled, 39.0) == doctest::Approx(3.0 * dwell_time(orbit, 39.0)));
    DwellLoop wider = orbit;
    wider.radius *= 2.5;
    CHECK(dwell_time(wider, 39.0) == doctest::Approx(2.5 * dwell_time(orbit, 39.0)));
}

TEST_CASE("shrinking the tilt interval shrinks the region") {
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        double lo = rng.uniform(0.1, 0.6);
        double hi = lo + rng.uniform(0.2, kPi / 2.0 - lo - 0.05);
        auto outer = make_target(Behavior::ANY, 0, {lo, hi});
        double lo2 = lo + rng.uniform(0.01, (hi - lo) / 3.0);
        double hi2 = hi - rng.uniform(0.01, (hi - lo) / 3.0);
        auto inner = make_target(Behavior::ANY, 0, {lo2, hi2});
        VisibilityRegion region_outer = build_visibility_region(outer, 1000.0);
        VisibilityRegion region_inner = build_visibility_region(inner, 1000.0);
        for (int k = 0; k < 20; ++k) {
            Vec2 p = dir(rng.uniform(0.0, kTwoPi)) * rng.uniform(0.0, 3000.0);
            if (region_inner.contains(p)) CHECK(region_outer.contains(p));
        }
    }
}
