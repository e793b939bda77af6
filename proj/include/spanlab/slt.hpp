#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "spanlab/geometry.hpp"

namespace spanlab {

enum class SltKind { dyadic, star };

struct SltConfig {
    SltKind kind = SltKind::dyadic;
    double kappa0 = 8.0;
    /// Leaf sets up to this size get an exhaustive hub-offset search; larger ones use the fixed schedule.
    std::size_t search_limit = 40;
};

/// Shallow-light tree. Node 0 is the root, nodes 1..L the leaves, then the hubs.
struct SltTree {
    Point root;
    std::vector<Point> leaves;
    std::vector<Point> hubs;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    double dist = 0.0;        // distance from the root to the affine hull of the leaves
    double weight = 0.0;
    double max_root_stretch = 1.0;
    std::size_t repairs = 0;  // leaves that needed a direct root edge after the build

    const Point& node(std::size_t i) const;
    std::size_t node_count() const { return 1 + leaves.size() + hubs.size(); }
};

/// Root-to-leaf tree paths within (1 + eps) of the straight distance.
SltTree build_slt(const Point& root, const std::vector<Point>& leaves, double eps,
                  const SltConfig& config = {});

/// Distance from p to the affine hull of pts.
double affine_distance(const Point& p, const std::vector<Point>& pts);

}  // namespace spanlab
