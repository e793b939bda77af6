#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "spanlab/graph.hpp"

namespace spanlab {

struct AnnulusRule {
    double c1 = 1.0;
    double c2 = 6.0;
};

struct QuadtreeConfig {
    double eps = 0.25;
    std::size_t dim = 2;
    AnnulusRule rule;
    double base_scale = 1.0;
    Metric metric = Metric::l2;
};

struct CellEntry {
    VertexId representative;
    std::size_t occupants;
};

struct CellKeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept;
};

/// One level of the global lattice: cells of side base_scale * 2^-level.
struct GridLevel {
    double side = 0.0;
    std::unordered_map<std::vector<std::int64_t>, CellEntry, CellKeyHash> cells;
    std::vector<VertexId> representatives;
    std::vector<EdgeId> edges;  // E_level, possibly shared with other levels
};

/// Online (1+eps)-spanner in R^d from a lazily grown grid hierarchy.
class QuadtreeSpanner {
public:
    explicit QuadtreeSpanner(const QuadtreeConfig& config);

    /// Inserts p; returns newly created graph edges.
    std::vector<EdgeId> insert(const Point& p);

    const QuadtreeConfig& config() const { return config_; }
    const SpannerGraph& graph() const { return graph_; }
    std::size_t size() const { return points_.size(); }

    /// Instantiated levels, coarse to fine; empty before two distinct points exist.
    std::vector<int> levels() const;
    const GridLevel* level(int l) const;
    /// E_l; empty when l is not instantiated.
    std::vector<EdgeId> level_edges(int l) const;

    std::vector<std::int64_t> cell_of(const Point& p, int l) const;

private:
    void instantiate(int l);
    void register_point(int l, VertexId v, std::vector<EdgeId>* fresh);
    std::pair<int, int> required_range() const;

    QuadtreeConfig config_;
    SpannerGraph graph_;
    std::vector<VertexId> points_;   // distinct points in insertion order
    std::map<Point, VertexId> first_copy_;
    std::map<int, GridLevel> levels_;
    double dmin_ = kInf;
    double diam_ = 0.0;
};

}  // namespace spanlab
