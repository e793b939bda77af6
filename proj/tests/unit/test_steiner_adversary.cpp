#include <doctest.h>

#include <cmath>

#include "spanlab/steiner_adversary.hpp"

using namespace spanlab;

namespace {

/// Length of segment ab inside the disk (centre c, radius r) and the half-plane y >= 0, from the
/// quadratic |a + t(b - a) - c|^2 = r^2 and the line crossing y = 0.
double disk_half_plane(const Point& a, const Point& b, const Point& c, double r) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double fx = a[0] - c[0], fy = a[1] - c[1];
    const double qa = dx * dx + dy * dy, qb = 2 * (fx * dx + fy * dy), qc = fx * fx + fy * fy - r * r;
    const double disc = qb * qb - 4 * qa * qc;
    if (disc <= 0) return 0.0;
    double t0 = std::max(0.0, (-qb - std::sqrt(disc)) / (2 * qa));
    double t1 = std::min(1.0, (-qb + std::sqrt(disc)) / (2 * qa));
    if (dy != 0) {
        const double tz = -a[1] / dy;
        if (dy > 0) t0 = std::max(t0, tz);
        else t1 = std::min(t1, tz);
    } else if (a[1] < 0) {
        return 0.0;
    }
    return t1 > t0 ? (t1 - t0) * std::sqrt(qa) : 0.0;
}

}  // namespace

TEST_CASE("arc helpers") {
    CHECK(arc_sagitta({0, 0}, {1, 0}, {0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(arc_sagitta({0, 0}, {1, 0}, {0.5, -0.25}) == doctest::Approx(-0.25));
    CHECK(std::isnan(arc_sagitta({0, 0}, {1, 0}, {2, 0.1})));
    CHECK(arc_length(1.0, 0.5) == doctest::Approx(M_PI / 2));
    CHECK(arc_length(1.0, 0.0) == 1.0);
    auto m = arc_point({0, 0}, {1, 0}, 0.5, 0.5);
    CHECK(m[0] == doctest::Approx(0.5));
    CHECK(m[1] == doctest::Approx(0.5));
    auto q = arc_point({0, 0}, {1, 0}, 0.5, 0.25);
    CHECK(std::hypot(q[0] - 0.5, q[1]) == doctest::Approx(0.5));
}

TEST_CASE("lens membership") {
    Lens half{{0, 0}, {1, 0}, 0.0, 0.5};
    CHECK(lens_contains(half, {0.5, 0.25}));
    CHECK_FALSE(lens_contains(half, {0.5, -0.1}));
    CHECK_FALSE(lens_contains(half, {0.5, 0.6}));
    Lens thin{{0, 0}, {1, 0}, 0.1, 0.2};
    CHECK(lens_contains(thin, {0.5, 0.15}));
    CHECK_FALSE(lens_contains(thin, {0.5, 0.05}));
}

TEST_CASE("clip length against the closed form on a half disk") {
    Lens half{{0, 0}, {1, 0}, 0.0, 0.5};
    const Point c{0.5, 0};
    CHECK(clip_length({0.5, -1}, {0.5, 1}, half) == doctest::Approx(0.5));
    CHECK(clip_length({-1, 0.25}, {2, 0.25}, half) == doctest::Approx(2 * std::sqrt(0.1875)));
    const std::vector<std::pair<Point, Point>> segs{
        {{0.2, -0.3}, {0.9, 0.6}}, {{-0.5, 0.1}, {0.3, 0.4}}, {{0.1, 0.05}, {0.7, 0.2}}, {{2, 2}, {3, 3}}};
    for (const auto& [a, b] : segs)
        CHECK(clip_length(a, b, half) == doctest::Approx(disk_half_plane(a, b, c, 0.5)).epsilon(1e-9));
}

TEST_CASE("region weight sums clipped edges") {
    SpannerGraph g(2);
    auto a = g.add_vertex({0.5, -1}), b = g.add_vertex({0.5, 1}), x = g.add_vertex({-1, 0.25}), y = g.add_vertex({2, 0.25});
    g.add_edge(a, b);
    g.add_edge(x, y);
    Region r{Lens{{0, 0}, {1, 0}, 0.0, 0.5}};
    auto w = region_weight(g, r);
    CHECK(w.weight == doctest::Approx(0.5 + 2 * std::sqrt(0.1875)));
    CHECK(w.error_bound <= 1e-3);
}

TEST_CASE("one stage against the bare segment") {
    SteinerAdversaryConfig cfg;
    cfg.eps = 0.25;
    SteinerAdversary adv(cfg);
    auto pts = adv.initial();
    REQUIRE(pts.size() == 2);
    CHECK(adv.witness_bound(1) == 1.125);
    CHECK(adv.witness_bound(2) == 1.1875);
    SpannerGraph g(2);
    for (const auto& p : pts) g.add_vertex(p);
    g.add_edge(0, 1);
    auto plan = adv.plan(g);
    REQUIRE(!plan.batch.empty());
    CHECK(plan.chord_sum >= 1.0);
    for (const auto& p : plan.batch) {
        bool inside = false;
        for (const auto& lens : plan.region) inside = inside || lens_contains(lens, p);
        CHECK(inside);
    }
    VertexId prev = 0;
    for (const auto& p : plan.batch) {
        auto v = g.add_vertex(p);
        g.add_edge(prev, v);
        prev = v;
    }
    g.add_edge(prev, 1);
    const double gain = adv.commit(g);
    CHECK(gain >= 0.5 - 1e-3);
    CHECK(adv.witness_weight() <= adv.witness_bound(adv.stage()) * (1 + 1e-9));
}
