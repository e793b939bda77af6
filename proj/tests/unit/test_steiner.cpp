#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "spanlab/random.hpp"
#include "spanlab/steiner.hpp"

using namespace spanlab;

namespace {

SteinerConfig config(double eps, std::size_t dim, BackboneMode mode = BackboneMode::lazy) {
    SteinerConfig c;
    c.eps = eps;
    c.dim = dim;
    c.mode = mode;
    return c;
}

/// Unit segments of an integer grid box with `along` x `cross`^(d-1) cells, counted one by one.
double brute_grid(std::int64_t along, std::int64_t cross, std::size_t dim) {
    double total = 0.0;
    std::vector<std::int64_t> ext{along};
    for (std::size_t k = 1; k < dim; ++k) ext.push_back(cross);
    std::vector<std::int64_t> c(dim, 0);
    for (;;) {
        for (std::size_t axis = 0; axis < dim; ++axis)
            if (c[axis] < ext[axis]) total += 1.0;
        std::size_t k = 0;
        while (k < dim && c[k] == ext[k]) c[k++] = 0;
        if (k == dim) break;
        ++c[k];
    }
    return total;
}

}  // namespace

TEST_CASE("grid closed form matches a segment count") {
    for (std::size_t dim : {2u, 3u}) {
        for (double eps : {0.5, 0.25}) {
            auto cover = build_direction_cover(dim, eps / 4);
            auto g = BucketGeometry::compute(eps, dim, cover.covering_radius);
            CHECK(g.grid_closed_form() == brute_grid(g.tile_along + 2 * g.lambda, 2 * g.tile_cross, dim));
            CHECK(g.s % 2 == 0);
            CHECK(g.lambda % g.s == 0);
        }
    }
}

TEST_CASE("length classes") {
    auto cover = build_direction_cover(2, 1.0 / 16);
    auto g = BucketGeometry::compute(0.25, 2, cover.covering_radius);
    const double lam = static_cast<double>(g.lambda);
    CHECK(length_class(lam, g, 1.0) == 0);
    CHECK(length_class(1.99 * lam, g, 1.0) == 0);
    CHECK(length_class(2 * lam, g, 1.0) == 1);
    CHECK(length_class(0.5 * lam, g, 1.0) == -1);
}

TEST_CASE("bucket assignment") {
    auto cover = build_direction_cover(2, 1.0 / 16);
    auto g = BucketGeometry::compute(0.25, 2, cover.covering_radius);
    const Point d0 = cover.directions[0];
    const double len = 1.5 * static_cast<double>(g.lambda) / 64;
    auto keys = assign_buckets({0, 0}, scale(d0, len), cover, g, 1.0 / 64);
    REQUIRE(!keys.empty());
    CHECK(keys.front().direction == 0);

    const Point mid = add(cover.directions[0], cover.directions[1]);
    const Point between = scale(mid, len / norm(mid));
    auto both = assign_buckets({0, 0}, between, cover, g, 1.0 / 64);
    std::set<std::size_t> dirs;
    for (const auto& k : both) dirs.insert(k.direction);
    CHECK(dirs.count(0) == 1);
    CHECK(dirs.count(1) == 1);

    Lcg rng(4);
    std::size_t longest = 0;
    for (int i = 0; i < 500; ++i) {
        Point a{rng.uniform(), rng.uniform()}, b{rng.uniform(), rng.uniform()};
        auto ks = assign_buckets(a, b, cover, g, 1.0 / 64);
        CHECK(!ks.empty());
        longest = std::max(longest, ks.size());
    }
    CHECK(longest <= 8);
    CHECK_THROWS(assign_buckets({0, 0}, {0, 0}, cover, g, 1.0));
}

TEST_CASE("first point has no edges, equal points weigh nothing") {
    SteinerSpanner s(config(0.25, 2));
    CHECK(s.insert({0.2, 0.3}).empty());
    CHECK(s.graph().edge_count() == 0);
    s.insert({0.2, 0.3});
    CHECK(s.query_path(0, 1).weight == 0.0);
}

TEST_CASE("two points") {
    SteinerSpanner s(config(0.25, 2));
    s.insert({0.1, 0.1});
    s.insert({0.8, 0.4});
    const double d = distance({0.1, 0.1}, {0.8, 0.4});
    CHECK(s.query_path(0, 1).weight <= 1.75 * d * (1 + 1e-9));
    CHECK(s.buckets().size() >= 1);
}

TEST_CASE("backbone is built once per bucket") {
    SteinerSpanner s(config(0.25, 2));
    s.insert({0.1, 0.1});
    s.insert({0.8, 0.4});
    REQUIRE(!s.buckets().empty());
    const BucketKey key = s.buckets().begin()->first;
    s.ensure_backbone(key);
    CHECK(s.ensure_backbone(key).empty());
    CHECK(s.buckets().at(key).built);
}

TEST_CASE("random suites keep 1 + 3 eps and grow monotonically") {
    for (std::size_t dim : {2u, 3u}) {
        for (auto mode : {BackboneMode::lazy, BackboneMode::eager}) {
            // Eager backbones fill whole buckets, which is millions of vertices in 3D.
            if (dim == 3 && mode == BackboneMode::eager) continue;
            const double eps = 0.5;
            SteinerSpanner s(config(eps, dim, mode));
            double last = 0.0;
            const std::size_t n = mode == BackboneMode::eager ? 16 : (dim == 2 ? 50 : 30);
            for (const auto& p : uniform_points(n, dim, 23)) {
                s.insert(p);
                CHECK(s.graph().total_weight() >= last);
                last = s.graph().total_weight();
            }
            CHECK(oracles::max_stretch(s.graph()) <= (1 + 3 * eps) * (1 + 1e-9));
            for (const auto& [key, st] : s.buckets())
                CHECK(st.max_connector <= std::sqrt(static_cast<double>(dim)) * s.unit(key.level) * (1 + 1e-9));
        }
    }
}

TEST_CASE("eager backbone within its bound") {
    SteinerSpanner s(config(0.25, 2, BackboneMode::eager));
    for (const auto& p : uniform_points(12, 2, 3)) s.insert(p);
    const double bound = s.geometry().backbone_bound(10.0);
    for (const auto& [key, st] : s.buckets())
        if (st.built) CHECK(st.backbone_weight <= bound * s.unit(key.level));
}
