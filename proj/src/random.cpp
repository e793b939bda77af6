#include "spanlab/random.hpp"

#include <cmath>
#include <numbers>

namespace spanlab {

std::vector<Point> uniform_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
    Lcg rng(seed);
    std::vector<Point> out(n, Point(dim));
    for (auto& p : out)
        for (auto& c : p) c = rng.uniform();
    return out;
}

Point random_direction(Lcg& rng, std::size_t dim) {
    for (;;) {
        Point v(dim);
        for (auto& c : v) {
            const double u1 = 1.0 - rng.uniform(), u2 = rng.uniform();
            c = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        }
        const double n = norm(v);
        if (n > 1e-12) return scale(v, 1.0 / n);
    }
}

}  // namespace spanlab
