#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spanlab/geometry.hpp"
#include "spanlab/graph.hpp"

namespace spanlab {

struct PointSet {
    std::size_t dim = 0;
    std::vector<Point> points;
};

/// `dim <d>` header, then one whitespace-separated point per line.
PointSet read_points(std::istream& in);
PointSet read_points_file(const std::string& path);
void write_points(std::ostream& out, const PointSet& ps);
void write_points_file(const std::string& path, const PointSet& ps);

/// Text records: `vertex <id> <kind> <coords...>` and `edge <u> <v> <weight> <index>`.
void write_graph(std::ostream& out, const SpannerGraph& g);
void write_graph_file(const std::string& path, const SpannerGraph& g);
SpannerGraph read_graph(std::istream& in);
SpannerGraph read_graph_file(const std::string& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

}  // namespace spanlab
