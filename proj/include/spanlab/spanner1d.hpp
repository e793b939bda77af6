#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spanlab/graph.hpp"

namespace spanlab {

/// A spanner edge seen as a closed interval; `step` is the insertion step that created it.
struct Interval {
    double left;
    double right;
    std::size_t step;
};

struct TimedPoint {
    double x;
    std::size_t step;
};

/// Largest closeness fraction that keeps the stretch within 1 + eps: eps / (4 + 2 eps).
double safe_closeness(double eps);

/// Online (1+eps)-spanner for points on a line. A point within `closeness` |pq| of an endpoint
/// of its shortest containing edge pq gets one edge; 0 selects safe_closeness(eps), and eps / 4
/// is the literal rule, whose stretch can exceed 1 + eps.
class Spanner1D {
public:
    explicit Spanner1D(double eps, double closeness = 0.0);

    /// Inserts x and returns the ids of the graph edges it created.
    std::vector<EdgeId> insert(double x);

    double eps() const { return eps_; }
    double closeness() const { return closeness_; }
    std::size_t size() const { return points_.size(); }
    const SpannerGraph& graph() const { return graph_; }
    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::vector<TimedPoint>& points() const { return points_; }

    /// Sorted distinct coordinates: the vertex sequence of the monotone path.
    std::vector<double> monotone_path() const;
    double monotone_path_weight() const;

    /// Index into intervals() of the shortest edge containing x in its interior.
    std::ptrdiff_t containing_edge(double x) const;

private:
    void add_interval(VertexId a, VertexId b, std::vector<EdgeId>& out);

    double eps_;
    double closeness_;
    SpannerGraph graph_;
    std::vector<Interval> intervals_;
    std::vector<TimedPoint> points_;
    std::map<double, VertexId> sorted_;       // coordinate -> first vertex there
    std::map<double, std::ptrdiff_t> gap_;   // gap left end -> innermost containing interval
};

enum class Property { p1, p2, p3 };

struct StructureViolation {
    Property property;
    std::size_t first;
    std::size_t second;
    std::string detail;
};

/// (P3) uses the shrink factor 1 - closeness.
std::vector<StructureViolation> check_structure_with(std::span<const Interval> edges,
                                                     std::span<const TimedPoint> points, double closeness);
/// closeness = safe_closeness(eps).
std::vector<StructureViolation> check_structure(std::span<const Interval> edges,
                                                std::span<const TimedPoint> points, double eps);
std::vector<StructureViolation> check_structure(const Spanner1D& s);

double opt_1d(std::span<const double> points);

}  // namespace spanlab
