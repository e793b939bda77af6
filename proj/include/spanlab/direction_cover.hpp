#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spanlab/geometry.hpp"

namespace spanlab {

/// Directions (up to sign) covering the hemisphere within `covering_radius`.
struct DirectionCover {
    std::size_t dim = 2;
    double eps = 0.0;
    std::vector<Point> directions;
    double covering_radius = 0.0;
};

/// 2D: K = max(4, ceil(pi / sqrt(eps))) uniform angles. d >= 3: cube-surface lattice
/// directions refined until the sampled covering radius is at most sqrt(eps) / 2.
DirectionCover build_direction_cover(std::size_t dim, double eps);

std::size_t nearest_direction(const DirectionCover& cover, const Point& v);

/// Largest sampled angle to the nearest cover direction.
double audit_cover(const DirectionCover& cover, std::size_t samples, std::uint64_t seed);

/// Orthonormal frame whose first axis is e0 (Gram-Schmidt on the standard basis).
std::vector<Point> orthonormal_frame(const Point& e0);

}  // namespace spanlab
