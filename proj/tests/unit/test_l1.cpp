#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "spanlab/l1.hpp"

using namespace spanlab;

namespace {

std::size_t stars_and_bars(std::size_t sum, std::size_t dim) {
    // C(sum + dim - 1, dim - 1)
    double r = 1.0;
    for (std::size_t i = 1; i < dim; ++i) r = r * static_cast<double>(sum + i) / static_cast<double>(i);
    return static_cast<std::size_t>(std::llround(r));
}

/// L1 stretch of every pair of construction points, by Floyd-Warshall on the network.
double network_stretch(const L1Construction& c) {
    auto g = manhattan_network(c);
    return oracles::max_stretch(g);
}

}  // namespace

TEST_CASE("k from eps") {
    CHECK(l1_k(0.25) == 2);
    CHECK(l1_k(1.0 / 16) == 4);
    CHECK(l1_k(0.3) == 2);
}

TEST_CASE("planar construction at eps 1/4") {
    auto c = build_l1_2d(0.25);
    CHECK(c.k == 2);
    CHECK(c.s1.size() == 4);
    CHECK(c.s1[0] == Point{0, 3});
    CHECK(c.cross_distance() == 6.0);
    CHECK(std::set<Point>(c.hat1.begin(), c.hat1.end()) == std::set<Point>{{0, 0}, {0, 2}, {2, 0}});
    auto g = manhattan_network(c);
    CHECK(g.total_weight() == doctest::Approx(20.0));
    CHECK(tree_weight(c) == doctest::Approx(8.0));
    CHECK(network_stretch(c) == doctest::Approx(1.0));
    auto chk = verify_bipartite_necessity(c);
    CHECK(chk.necessary);
    CHECK(chk.min_detour == doctest::Approx(8.0));
    CHECK(chk.max_allowed == doctest::Approx(7.5));
    CHECK(forced_bipartite_weight(c) == 96.0);
}

TEST_CASE("planar construction at eps 1/16") {
    auto c = build_l1_2d(1.0 / 16);
    CHECK(c.s1.size() == 16);
    CHECK(c.cross_distance() == 30.0);
    CHECK(manhattan_network(c).total_weight() == doctest::Approx(156.0));
    CHECK(network_stretch(c) == doctest::Approx(1.0));
    CHECK(verify_bipartite_necessity(c).necessary);
    CHECK(build_manhattan_2d(c).total_weight() > 0.0);
}

TEST_CASE("original coordinates join the roots") {
    auto c = build_l1_2d(0.25, true);
    CHECK(c.cross_distance() == 8.0);
    CHECK(network_stretch(c) == doctest::Approx(1.0));
}

TEST_CASE("high-dimensional point sets") {
    for (std::size_t dim : {3u, 4u}) {
        auto c = build_l1_highdim(0.25, dim);
        CHECK(c.s1.size() == stars_and_bars(2, dim));
        for (const auto& p : c.s1) {
            double sum = 0;
            for (double x : p) sum += x;
            CHECK(sum == 2.0);
        }
    }
    CHECK(build_l1_highdim(0.125, 3).s1.size() == stars_and_bars(6, 3));
}

TEST_CASE("refined network is Manhattan, literal quadtree is not") {
    CHECK(network_stretch(build_l1_highdim(0.25, 3)) == doctest::Approx(1.0));
    CHECK(network_stretch(build_l1_highdim(0.125, 3)) == doctest::Approx(1.0));
    CHECK(network_stretch(build_l1_highdim(0.25, 3, L1Network::quadtree)) > 1.5);
    auto r = build_l1_highdim(0.25, 3);
    auto q = build_l1_highdim(0.25, 3, L1Network::quadtree);
    CHECK(tree_weight(r) == doctest::Approx(216.0));
    CHECK(tree_weight(q) == doctest::Approx(147.0));
}
