#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "spanlab/graph.hpp"

namespace spanlab {

enum class OracleMethod { greedy, mst, exact };

OracleMethod parse_oracle_method(std::string_view name);
std::string_view oracle_method_name(OracleMethod m);

struct OracleResult {
    double weight = 0.0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // indices into the point list
    OracleMethod method = OracleMethod::greedy;
    bool certified = false;  // exact optimum proven
    std::size_t nodes = 0;   // search nodes (exact only)
};

/// Path-greedy t-spanner: pairs by increasing distance, an edge whenever the current
/// shortest path exceeds t times the distance.
OracleResult greedy_spanner(std::span<const Point> points, double t, Metric m = Metric::l2);

/// Minimum spanning tree (Prim).
OracleResult mst_oracle(std::span<const Point> points, Metric m = Metric::l2);

/// Minimum-weight t-spanner over edge subsets of the complete graph, by branch and bound.
/// Subdividing an edge with Steiner points leaves every path weight unchanged, so
/// `allow_steiner_subdivision_only` yields the same optimum and is kept for the record.
OracleResult exact_opt_small(std::span<const Point> points, double t, Metric m = Metric::l2,
                             bool allow_steiner_subdivision_only = false);

inline constexpr std::size_t kExactMaxPoints = 9;

/// MST weight.
double opt_lower_bound(std::span<const Point> points, Metric m = Metric::l2);

/// Graph on the points with the result's edges.
SpannerGraph oracle_graph(std::span<const Point> points, const OracleResult& r, Metric m = Metric::l2);

}  // namespace spanlab
