#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "spanlab/direction_cover.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/quadtree.hpp"
#include "spanlab/slt.hpp"

namespace spanlab {

enum class BackboneMode { lazy, eager };

struct SteinerConfig {
    double eps = 0.25;
    std::size_t dim = 2;
    AnnulusRule rule;
    double base_scale = 1.0;
    SltConfig slt;
    /// Stretch handed to each shallow-light tree, as a fraction of eps.
    double slt_eps_fraction = 0.5;
    BackboneMode mode = BackboneMode::lazy;
    /// Skip routing a primary edge that already has a (1+eps) path in G2.
    bool skip_served = true;
};

/// Rectangle and square constants in lattice units of one bucket level.
struct BucketGeometry {
    double eps = 0.0;
    std::size_t dim = 2;
    double rho = 0.0;            // direction cover radius
    std::int64_t s = 2;          // square side
    std::int64_t root_dist = 4;  // distance from a square face to its tree roots
    std::int64_t lambda = 0;     // shortest edge length of a class, in units
    std::int64_t tile_along = 0;
    std::int64_t tile_cross = 0;
    std::int64_t lane_reach = 0;

    static BucketGeometry compute(double eps, std::size_t dim, double rho);
    /// Weight in units of the full grid over one rectangle.
    double grid_closed_form() const;
    /// Trees built by an eager backbone over one rectangle.
    std::size_t slt_count() const;
    /// Grid plus slt_count trees of weight kappa * root_dist.
    double backbone_bound(double kappa) const;
};

struct BucketKey {
    int level = 0;  // length class j: unit = base_scale * 2^j
    std::size_t direction = 0;
    std::vector<std::int64_t> rect;  // along tile, then one tile per cross axis

    auto operator<=>(const BucketKey&) const = default;
};

/// Keys of every bucket whose rectangle contains ab and whose direction is within the
/// cover radius; the primary key (nearest direction, tile of the midpoint) comes first.
std::vector<BucketKey> assign_buckets(const Point& a, const Point& b, const DirectionCover& cover,
                                      const BucketGeometry& geom, double base_scale);

/// Length class of an edge: lambda * 2^j <= |ab| / base < 2 lambda * 2^j.
int length_class(double length, const BucketGeometry& geom, double base_scale);

struct BucketStats {
    double backbone_weight = 0.0;
    double connector_weight = 0.0;
    double max_connector = 0.0;
    std::size_t edges = 0;
    std::size_t served_existing = 0;
    std::size_t fallbacks = 0;
    bool built = false;
};

struct SteinerStats {
    std::size_t primary_edges = 0;
    std::size_t zero_edges = 0;
    std::size_t served_existing = 0;
    std::size_t routed = 0;
    std::size_t fallbacks = 0;
    std::size_t trees = 0;
    std::size_t tree_repairs = 0;
};

/// Online Steiner spanner: quadtree spanner G1 plus bucketed grid and tree backbones in G2.
class SteinerSpanner {
public:
    explicit SteinerSpanner(const SteinerConfig& config);
    ~SteinerSpanner();
    SteinerSpanner(SteinerSpanner&&) noexcept;

    /// Inserts p; returns the G2 edges created (some may be replaced later by subdivision).
    std::vector<EdgeId> insert(const Point& p);
    /// Builds the full backbone of a bucket; empty when already built.
    std::vector<EdgeId> ensure_backbone(const BucketKey& key);
    /// Shortest G2 path between the i-th and j-th inserted points.
    PathResult query_path(std::size_t i, std::size_t j) const;

    const SteinerConfig& config() const { return config_; }
    const SpannerGraph& graph() const { return g2_; }
    const QuadtreeSpanner& primary() const { return g1_; }
    const DirectionCover& cover() const { return cover_; }
    const BucketGeometry& geometry() const { return geom_; }
    const std::map<BucketKey, BucketStats>& buckets() const { return buckets_; }
    const SteinerStats& stats() const { return stats_; }
    /// G2 vertex of the i-th inserted point.
    VertexId input_vertex(std::size_t i) const { return inputs_.at(i); }
    std::size_t size() const { return inputs_.size(); }
    /// World coordinates of a lattice point of class j and direction i.
    Point lattice_point(int level, std::size_t direction, const std::vector<std::int64_t>& c) const;
    double unit(int level) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    SteinerConfig config_;
    QuadtreeSpanner g1_;
    SpannerGraph g2_;
    DirectionCover cover_;
    BucketGeometry geom_;
    std::map<BucketKey, BucketStats> buckets_;
    SteinerStats stats_;
    std::vector<VertexId> inputs_;
};

}  // namespace spanlab
