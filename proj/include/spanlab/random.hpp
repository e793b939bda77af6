#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spanlab/geometry.hpp"

namespace spanlab {

/// 64-bit linear congruential generator; uniform() takes the top 53 bits.
class Lcg {
public:
    static constexpr std::uint64_t kMultiplier = 6364136223846793005ull;
    static constexpr std::uint64_t kIncrement = 1442695040888963407ull;

    explicit Lcg(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * kMultiplier + kIncrement;
        return state_;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

/// n points uniform in the unit cube [0,1)^dim, coordinates drawn in order.
std::vector<Point> uniform_points(std::size_t n, std::size_t dim, std::uint64_t seed);

/// Unit vector uniform on the sphere (Gaussian by Box-Muller).
Point random_direction(Lcg& rng, std::size_t dim);

}  // namespace spanlab
