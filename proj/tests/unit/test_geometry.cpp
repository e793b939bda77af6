#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "spanlab/geometry.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/io.hpp"
#include "spanlab/random.hpp"

using namespace spanlab;

namespace {

/// All-pairs distances by Floyd-Warshall over the alive edges.
std::vector<std::vector<double>> floyd(const SpannerGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
    for (const auto& e : g.edges()) {
        if (!e.alive) continue;
        d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

/// Minimum spanning tree weight by enumerating every (n-1)-edge subset of the complete graph.
double brute_mst(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
    double best = kInf;
    for (unsigned mask = 0; mask < (1u << all.size()); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != n - 1) continue;
        std::vector<std::size_t> parent(n);
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x];
            return x;
        };
        double w = 0.0;
        bool tree = true;
        for (std::size_t e = 0; e < all.size(); ++e) {
            if (!(mask >> e & 1u)) continue;
            auto a = find(all[e].first), b = find(all[e].second);
            if (a == b) tree = false;
            parent[a] = b;
            w += distance(pts[all[e].first], pts[all[e].second]);
        }
        if (tree) best = std::min(best, w);
    }
    return best;
}

SpannerGraph random_graph(std::size_t n, std::uint64_t seed) {
    Lcg rng(seed);
    SpannerGraph g(2);
    for (const auto& p : uniform_points(n, 2, seed)) g.add_vertex(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.uniform() < 0.3) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_CASE("metrics and tolerance") {
    CHECK(distance({0, 0}, {3, 4}) == 5.0);
    CHECK(distance({0, 0}, {3, 4}, Metric::l1) == 7.0);
    CHECK(parse_metric("l1") == Metric::l1);
    CHECK(parse_metric(metric_name(Metric::l2)) == Metric::l2);
    CHECK(parse_metric(metric_name(Metric::l1)) == Metric::l1);
    CHECK_THROWS(parse_metric("linf"));
    CHECK(leq_tol(1.0 + 5e-10, 1.0));
    CHECK_FALSE(leq_tol(1.0 + 1e-8, 1.0));
    CHECK_FALSE(leq_tol(kInf, 2.0));
    CHECK(leq_tol(2.0, kInf));
}

TEST_CASE("ellipse membership") {
    // |pa| + |pb| = 2 sqrt(0.25 + 0.34^2) = 1.2093...
    CHECK_FALSE(ellipse_contains({0, 0}, {1, 0}, 0.2, {0.5, 0.34}));
    CHECK(ellipse_contains({0, 0}, {1, 0}, 0.25, {0.5, 0.34}));
    // |pa| + |pb| = 1.25 exactly on the boundary at (0.5, 0.375).
    CHECK(ellipse_contains({0, 0}, {1, 0}, 0.25, {0.5, 0.375}));
    CHECK(ellipse_contains({0, 0}, {1, 0}, 0.0, {0.25, 0.0}));
}

TEST_CASE("undirected angle") {
    CHECK(undirected_angle({1, 0}, {-1, 0}) == doctest::Approx(0.0));
    CHECK(undirected_angle({1, 0}, {0, 2}) == doctest::Approx(M_PI / 2));
    CHECK(undirected_angle({1, 1}, {1, 0}) == doctest::Approx(M_PI / 4));
}

TEST_CASE("near-parallel weight") {
    std::vector<Segment> path{{{0, 0}, {0.5, 0.02}}, {{0.5, 0.02}, {1, 0}}};
    auto r = near_parallel_weight(path, {0, 0}, {1, 0}, 0.01);
    CHECK(r.weight == doctest::Approx(2.0 * std::hypot(0.5, 0.02)).epsilon(1e-12));
    CHECK(r.weight == doctest::Approx(1.0008).epsilon(1e-4));
    std::vector<Segment> steep{{{0, 0}, {0.5, 0.2}}, {{0.5, 0.2}, {0.5, 0.2}}, {{0.5, 0.2}, {1, 0}}};
    auto s = near_parallel_weight(steep, {0, 0}, {1, 0}, 0.01);
    CHECK(s.weight == 0.0);
    CHECK(s.skipped == 1);
}

TEST_CASE("graph subdivision keeps weight and distances") {
    SpannerGraph g(2);
    auto a = g.add_vertex({0, 0});
    auto b = g.add_vertex({2, 0});
    auto e = g.add_edge(a, b);
    REQUIRE(e);
    CHECK_FALSE(g.add_edge(b, a));
    auto x = g.add_vertex({0.5, 0}, VertexKind::steiner);
    auto [f, s] = g.subdivide(*e, x);
    CHECK_FALSE(g.edge(*e).alive);
    CHECK(g.edge(f).weight + g.edge(s).weight == doctest::Approx(2.0));
    CHECK(g.total_weight() == doctest::Approx(2.0));
    CHECK(g.edge_count() == 2);
    CHECK(shortest_path_weight(g, a, b) == doctest::Approx(2.0));
    CHECK(g.input_vertices().size() == 2);
    auto r = g.replay();
    CHECK(r.total_weight() == g.total_weight());
    CHECK(r.edge_count() == g.edge_count());
}

TEST_CASE("shortest paths agree with Floyd-Warshall") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto g = random_graph(14, seed);
        auto fw = floyd(g);
        for (VertexId u = 0; u < g.vertex_count(); ++u) {
            auto sssp = single_source_distances(g, u);
            BoundedSearch bs(g);
            for (VertexId v = 0; v < g.vertex_count(); ++v) {
                if (std::isinf(fw[u][v])) {
                    CHECK(std::isinf(sssp[v]));
                    continue;
                }
                CHECK(sssp[v] == doctest::Approx(fw[u][v]).epsilon(1e-12));
                CHECK(shortest_path(g, u, v).weight == doctest::Approx(fw[u][v]).epsilon(1e-12));
                CHECK(bs.run(u, v, fw[u][v] * (1 + 1e-9)) == doctest::Approx(fw[u][v]).epsilon(1e-12));
                if (fw[u][v] > 0) CHECK(std::isinf(bs.run(u, v, fw[u][v] * 0.99)));
            }
        }
    }
}

TEST_CASE("unit square MST and stretch") {
    std::vector<Point> sq{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(brute_mst(sq) == doctest::Approx(3.0));
    CHECK(mst_weight(sq) == doctest::Approx(3.0));
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto pts = uniform_points(7, 2, seed);
        CHECK(mst_weight(pts) == doctest::Approx(brute_mst(pts)).epsilon(1e-12));
    }
    SpannerGraph g(2);
    for (const auto& p : sq) g.add_vertex(p);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    auto rep = verify_stretch(g, 3.0);
    CHECK(rep.passed);
    CHECK(rep.max_stretch == doctest::Approx(3.0));
    CHECK(rep.pairs_checked == 6);
    auto bad = verify_stretch(g, 2.9);
    CHECK_FALSE(bad.passed);
    CHECK(bad.witness.path_weight == doctest::Approx(3.0));
}

TEST_CASE("graph text round trip") {
    auto g = random_graph(10, 7);
    auto x = g.add_vertex({0.1, 0.1}, VertexKind::steiner);
    g.add_edge(0, x);
    std::stringstream ss;
    write_graph(ss, g);
    auto h = read_graph(ss);
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.edge_count() == g.edge_count());
    CHECK(h.total_weight() == g.total_weight());
    CHECK(h.vertex(x).kind == VertexKind::steiner);
    std::stringstream bad("dim 2\nedge 0 1 1.0 0\n");
    CHECK_THROWS(read_graph(bad));
}

TEST_CASE("points text round trip") {
    PointSet ps{3, uniform_points(20, 3, 11)};
    std::stringstream ss;
    write_points(ss, ps);
    auto back = read_points(ss);
    CHECK(back.dim == 3);
    CHECK(back.points == ps.points);
    CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("random generator") {
    Lcg a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Lcg c(1);
    CHECK(c.next() == Lcg::kMultiplier + Lcg::kIncrement);
    Lcg u(3);
    double sum = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double x = u.uniform();
        CHECK((x >= 0.0 && x < 1.0));
        sum += x;
    }
    CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.02));
    CHECK(uniform_points(5, 2, 9) == uniform_points(5, 2, 9));
    CHECK(uniform_points(5, 2, 9) != uniform_points(5, 2, 10));
    Lcg r(5);
    auto d = random_direction(r, 3);
    CHECK(norm(d) == doctest::Approx(1.0));
}
