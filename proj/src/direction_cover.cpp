#include "spanlab/direction_cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "spanlab/random.hpp"

namespace spanlab {

namespace {

std::vector<Point> cube_lattice_directions(std::size_t dim, int m) {
    std::map<std::vector<long long>, Point> unique;
    std::vector<long long> c(dim, -m);
    for (;;) {
        const bool on_surface = std::any_of(c.begin(), c.end(), [&](long long x) { return std::llabs(x) == m; });
        if (on_surface) {
            std::vector<long long> key = c;
            // Canonical sign on the integer vector keeps the map exact.
            for (long long x : key) {
                if (x == 0) continue;
                if (x < 0)
                    for (auto& y : key) y = -y;
                break;
            }
            if (!unique.count(key)) {
                Point v(dim);
                for (std::size_t i = 0; i < dim; ++i) v[i] = static_cast<double>(key[i]);
                unique.emplace(key, scale(v, 1.0 / norm(v)));
            }
        }
        std::size_t i = 0;
        while (i < dim && c[i] == m) c[i++] = -m;
        if (i == dim) break;
        ++c[i];
    }
    std::vector<Point> out;
    for (auto& kv : unique) out.push_back(kv.second);
    return out;
}

}  // namespace

DirectionCover build_direction_cover(std::size_t dim, double eps) {
    if (dim < 2) throw std::invalid_argument("direction cover: d must be >= 2");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("direction cover: need 0 < eps < 1");
    DirectionCover cover;
    cover.dim = dim;
    cover.eps = eps;
    if (dim == 2) {
        const auto k = std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(std::numbers::pi / std::sqrt(eps))));
        for (std::size_t i = 0; i < k; ++i) {
            const double a = std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
            cover.directions.push_back({std::cos(a), std::sin(a)});
        }
        cover.covering_radius = std::numbers::pi / (2.0 * static_cast<double>(k));
        return cover;
    }
    const double target = std::sqrt(eps) / 2.0;
    for (int m = 1;; ++m) {
        cover.directions = cube_lattice_directions(dim, m);
        cover.covering_radius = audit_cover(cover, 4096, 0x5eed0000u + static_cast<std::uint64_t>(m));
        if (cover.covering_radius <= target) break;
    }
    // The audit samples; inflate slightly so downstream geometry has slack.
    cover.covering_radius *= 1.1;
    return cover;
}

std::size_t nearest_direction(const DirectionCover& cover, const Point& v) {
    std::size_t best = 0;
    double best_cos = -1.0;
    const double n = norm(v);
    for (std::size_t i = 0; i < cover.directions.size(); ++i) {
        const double c = std::abs(dot(cover.directions[i], v)) / n;
        if (c > best_cos) {
            best_cos = c;
            best = i;
        }
    }
    return best;
}

double audit_cover(const DirectionCover& cover, std::size_t samples, std::uint64_t seed) {
    Lcg rng(seed);
    double worst = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        const Point v = random_direction(rng, cover.dim);
        const std::size_t i = nearest_direction(cover, v);
        worst = std::max(worst, undirected_angle(v, cover.directions[i]));
    }
    return worst;
}

std::vector<Point> orthonormal_frame(const Point& e0) {
    const std::size_t d = e0.size();
    std::vector<Point> frame{scale(e0, 1.0 / norm(e0))};
    std::vector<std::size_t> order(d);
    for (std::size_t k = 0; k < d; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(e0[a]) < std::abs(e0[b]); });
    for (std::size_t k : order) {
        if (frame.size() == d) break;
        Point v(d, 0.0);
        v[k] = 1.0;
        for (const auto& f : frame) v = sub(v, scale(f, dot(v, f)));
        const double n = norm(v);
        if (n > 1e-3) frame.push_back(scale(v, 1.0 / n));
    }
    return frame;
}

}  // namespace spanlab
