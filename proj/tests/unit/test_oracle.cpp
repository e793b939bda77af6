#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spanlab/oracle.hpp"
#include "spanlab/random.hpp"

using namespace spanlab;

namespace {

/// Minimum t-spanner weight over every edge subset of the complete graph.
double brute_opt(const std::vector<Point>& pts, double t) {
    const std::size_t n = pts.size();
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
    double best = kInf;
    for (std::size_t mask = 0; mask < (std::size_t{1} << all.size()); ++mask) {
        SpannerGraph g(pts[0].size());
        for (const auto& p : pts) g.add_vertex(p);
        for (std::size_t e = 0; e < all.size(); ++e)
            if (mask >> e & 1) g.add_edge(all[e].first, all[e].second);
        if (g.total_weight() >= best) continue;
        if (oracles::max_stretch(g) <= t * (1 + 1e-9)) best = g.total_weight();
    }
    return best;
}

std::vector<Point> triangle() { return {{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}}; }

}  // namespace

TEST_CASE("method names") {
    CHECK(parse_oracle_method("exact") == OracleMethod::exact);
    CHECK(oracle_method_name(OracleMethod::mst) == "mst");
    CHECK_THROWS(parse_oracle_method("wspd"));
}

TEST_CASE("greedy on collinear points") {
    std::vector<Point> pts{{0, 0}, {1, 0}, {2, 0}};
    auto r = greedy_spanner(pts, 1.1);
    CHECK(r.weight == doctest::Approx(2.0));
    CHECK(r.edges.size() == 2);
}

TEST_CASE("greedy on the equilateral triangle") {
    CHECK(greedy_spanner(triangle(), 1.5).edges.size() == 3);
    CHECK(greedy_spanner(triangle(), 2.0).edges.size() == 2);
}

TEST_CASE("greedy and mst are spanners") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto pts = uniform_points(30, 2, seed);
        auto r = greedy_spanner(pts, 1.25);
        CHECK(oracles::max_stretch(oracle_graph(pts, r)) <= 1.25 * (1 + 1e-9));
        auto m = mst_oracle(pts);
        CHECK(m.edges.size() == 29);
        CHECK(m.weight == doctest::Approx(opt_lower_bound(pts)));
        CHECK(m.weight <= r.weight + 1e-12);
    }
    CHECK_THROWS(opt_lower_bound(std::vector<Point>{{0, 0}}));
}

TEST_CASE("exact optimum agrees with subset enumeration") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto pts = uniform_points(5, 2, seed);
        for (double t : {1.1, 1.5, 2.0}) {
            auto r = exact_opt_small(pts, t);
            CHECK(r.certified);
            CHECK(r.weight == doctest::Approx(brute_opt(pts, t)).epsilon(1e-12));
            CHECK(r.weight <= greedy_spanner(pts, t).weight + 1e-12);
            CHECK(exact_opt_small(pts, t, Metric::l2, true).weight == r.weight);
        }
    }
}

TEST_CASE("optimum drops when the centre is added") {
    auto tri = triangle();
    auto three = exact_opt_small(tri, 1.5);
    CHECK(three.weight == doctest::Approx(3.0));
    auto four = tri;
    four.push_back({0.5, std::sqrt(3.0) / 6});
    auto with_centre = exact_opt_small(four, 1.5);
    CHECK(with_centre.weight == doctest::Approx(std::sqrt(3.0)));
    CHECK(with_centre.weight < three.weight);
}

TEST_CASE("exact rejects large inputs") {
    CHECK_THROWS(exact_opt_small(uniform_points(kExactMaxPoints + 1, 2, 1), 1.5));
}
