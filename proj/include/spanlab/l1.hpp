#pragma once

#include <cstddef>
#include <vector>

#include "spanlab/geometry.hpp"
#include "spanlab/graph.hpp"

namespace spanlab {

/// Point sets and axis-parallel network of the L1 lower-bound constructions.
struct L1Construction {
    double eps = 0.0;
    int k = 0;  // ceil(log2(1/eps))
    std::size_t dim = 2;
    bool original_coords = false;
    std::vector<Point> s1, s2;
    std::vector<Point> hat1, hat2;
    /// Axis-parallel segments of the network; they may overlap or pass through vertices.
    std::vector<Segment> segments;
    /// The first tree_segments entries of `segments` form T1.
    std::size_t tree_segments = 0;

    /// Minimum L1 distance between S1 and S2.
    double cross_distance() const;
    /// s1, s2, hat1, hat2 in that order, duplicates removed.
    std::vector<Point> all_points() const;
};

int l1_k(double eps);

/// s_i = (i, 2^k - 1 - i); with `original_coords`, s_i = (i, 2^k - i) and the two tree
/// roots are joined by a vertical segment.
L1Construction build_l1_2d(double eps, bool original_coords = false);

/// Trees T1, T2 over the corner points plus staircases P1, P2 with bend vertices (L1 metric).
SpannerGraph build_manhattan_2d(const L1Construction& c);

/// quadtree: edges of the cubes meeting the hyperplane. refined: also every edge of all 2^d
/// children of those cubes.
enum class L1Network { quadtree, refined };

/// S1: nonnegative lattice points with coordinate sum 2^k - 2; Hat: every corner of the
/// dyadic quadtree over [0, 2^k]^d restricted to cubes meeting that hyperplane.
L1Construction build_l1_highdim(double eps, std::size_t dim, L1Network network = L1Network::refined);

/// Graph of the union of c.segments, split at every vertex lying on them (L1 metric).
/// Construction points are input vertices; other segment ends are Steiner vertices.
SpannerGraph manhattan_network(const L1Construction& c);

/// Length of the union of the T1 segments.
double tree_weight(const L1Construction& c);

struct BipartiteCheck {
    bool necessary = true;
    double cross_distance = 0.0;
    double min_detour = kInf;  // cheapest 2-hop detour over all cross pairs
    double max_allowed = 0.0;  // (1 + eps) times the longest cross pair
};

/// True iff no cross pair of S1 x S2 has a 2-hop detour through a third point of S1 u S2
/// within (1 + eps) times its L1 distance.
BipartiteCheck verify_bipartite_necessity(const L1Construction& c);

/// |S1| |S2| dist(S1, S2).
double forced_bipartite_weight(const L1Construction& c);

}  // namespace spanlab
