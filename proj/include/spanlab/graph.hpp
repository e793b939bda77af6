#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spanlab/geometry.hpp"

namespace spanlab {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VertexKind : std::uint8_t { input, steiner };

struct Vertex {
    Point point;
    VertexKind kind;
    std::size_t index;
};

struct Edge {
    VertexId u;
    VertexId v;
    double weight;
    std::size_t index;
    bool alive;
};

/// Edge `replaced` was split at vertex `at` into `first` (u side) and `second`.
struct Subdivision {
    EdgeId replaced;
    VertexId at;
    EdgeId first;
    EdgeId second;
};

/// Append-only weighted graph over input and Steiner vertices.
class SpannerGraph {
public:
    explicit SpannerGraph(std::size_t dim, Metric metric = Metric::l2);

    std::size_t dim() const { return dim_; }
    Metric metric() const { return metric_; }

    VertexId add_vertex(Point p, VertexKind kind = VertexKind::input);

    /// Adds uv with its metric weight; nullopt when uv already exists.
    std::optional<EdgeId> add_edge(VertexId u, VertexId v);

    /// Loader entry point: weight and index come from a file record.
    EdgeId add_edge_record(VertexId u, VertexId v, double weight, std::size_t index);

    /// Replaces edge e by two collinear sub-edges through x.
    std::pair<EdgeId, EdgeId> subdivide(EdgeId e, VertexId x);

    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

    const Vertex& vertex(VertexId v) const;
    const Edge& edge(EdgeId e) const;
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_slots() const { return edges_.size(); }
    std::size_t edge_count() const { return alive_edges_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    /// Incident edge ids, including replaced ones; callers skip !alive.
    const std::vector<EdgeId>& incident(VertexId v) const { return adj_[v]; }
    const std::vector<Subdivision>& subdivisions() const { return subdivisions_; }
    std::vector<VertexId> input_vertices() const;

    double total_weight() const;

    /// Rebuilds a fresh graph by replaying the operation log.
    SpannerGraph replay() const;

private:
    enum class OpKind : std::uint8_t { vertex, edge, subdivide };
    struct Op {
        OpKind kind;
        std::uint32_t a;
        std::uint32_t b;
    };

    static std::uint64_t key(VertexId u, VertexId v);
    EdgeId push_edge(VertexId u, VertexId v, double w, std::size_t index);
    void check_vertex(VertexId v) const;

    std::size_t dim_;
    Metric metric_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> adj_;
    std::unordered_map<std::uint64_t, EdgeId> lookup_;
    std::vector<Subdivision> subdivisions_;
    std::vector<Op> log_;
    std::size_t alive_edges_ = 0;
};

double graph_weight(const SpannerGraph& g);

double shortest_path_weight(const SpannerGraph& g, VertexId u, VertexId v);

struct PathResult {
    double weight = kInf;
    std::vector<VertexId> vertices;
};

PathResult shortest_path(const SpannerGraph& g, VertexId u, VertexId v);

std::vector<double> single_source_distances(const SpannerGraph& g, VertexId src);

struct StretchWitness {
    VertexId u = 0;
    VertexId v = 0;
    double path_weight = 0.0;
    double direct = 0.0;
};

struct StretchReport {
    double max_stretch = 1.0;
    StretchWitness witness;
    std::size_t pairs_checked = 0;
    double t = 1.0;
    bool passed = true;
};

/// All pairs of input vertices.
StretchReport verify_stretch(const SpannerGraph& g, double t);
StretchReport verify_stretch(const SpannerGraph& g,
                             std::span<const std::pair<VertexId, VertexId>> pairs, double t);

double mst_weight(std::span<const Point> points, Metric m = Metric::l2);

/// Reusable A* search that gives up beyond a weight bound.
class BoundedSearch {
public:
    explicit BoundedSearch(const SpannerGraph& g) : g_(g) {}
    /// Shortest s-t weight if it is <= bound, otherwise kInf.
    double run(VertexId s, VertexId t, double bound);
    /// Dijkstra from s up to weight limit; distances to targets (kInf when beyond the limit).
    std::vector<double> reach(VertexId s, const std::vector<VertexId>& targets, double limit);
    std::size_t last_settled() const { return settled_; }

private:
    const SpannerGraph& g_;
    std::vector<double> dist_;
    std::vector<double> heur_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
    std::size_t settled_ = 0;
};

}  // namespace spanlab
