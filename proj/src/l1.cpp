#include "spanlab/l1.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace spanlab {

namespace {

Point reflect(const Point& p) { return scale(p, -1.0); }

std::vector<Point> reflect_all(const std::vector<Point>& ps) {
    std::vector<Point> out;
    out.reserve(ps.size());
    for (const auto& p : ps) out.push_back(reflect(p));
    return out;
}

/// Axis of an axis-parallel segment, or -1 when degenerate or oblique.
int segment_axis(const Segment& s) {
    int axis = -1;
    for (std::size_t i = 0; i < s.a.size(); ++i)
        if (s.a[i] != s.b[i]) {
            if (axis >= 0) return -2;
            axis = static_cast<int>(i);
        }
    return axis;
}

/// Line key: the segment's axis and its coordinates with that axis zeroed.
using LineKey = std::pair<int, Point>;

LineKey line_of(const Point& p, int axis) {
    Point q = p;
    q[static_cast<std::size_t>(axis)] = 0.0;
    return {axis, q};
}

/// Merged covered intervals per line.
std::map<LineKey, std::vector<std::pair<double, double>>> cover_lines(const std::vector<Segment>& segs,
                                                                    std::size_t count) {
    std::map<LineKey, std::vector<std::pair<double, double>>> lines;
    for (std::size_t i = 0; i < count; ++i) {
        const int axis = segment_axis(segs[i]);
        if (axis == -1) continue;
        if (axis < 0) throw std::invalid_argument("manhattan network: segment is not axis-parallel");
        const auto ax = static_cast<std::size_t>(axis);
        const double lo = std::min(segs[i].a[ax], segs[i].b[ax]);
        const double hi = std::max(segs[i].a[ax], segs[i].b[ax]);
        lines[line_of(segs[i].a, axis)].emplace_back(lo, hi);
    }
    for (auto& [key, iv] : lines) {
        std::sort(iv.begin(), iv.end());
        std::vector<std::pair<double, double>> merged;
        for (const auto& x : iv) {
            if (!merged.empty() && x.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, x.second);
            else
                merged.push_back(x);
        }
        iv = std::move(merged);
    }
    return lines;
}

}  // namespace

int l1_k(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("l1: need 0 < eps < 1");
    return static_cast<int>(std::ceil(std::log2(1.0 / eps) - 1e-12));
}

double L1Construction::cross_distance() const {
    double best = kInf;
    for (const auto& p : s1)
        for (const auto& q : s2) best = std::min(best, distance(p, q, Metric::l1));
    return best;
}

std::vector<Point> L1Construction::all_points() const {
    std::vector<Point> out;
    std::set<Point> seen;
    for (const auto* set : {&s1, &s2, &hat1, &hat2})
        for (const auto& p : *set)
            if (seen.insert(p).second) out.push_back(p);
    return out;
}

L1Construction build_l1_2d(double eps, bool original_coords) {
    if (!(eps > 0.0 && eps <= 0.5)) throw std::invalid_argument("build_l1_2d: need 0 < eps <= 1/2");
    L1Construction c;
    c.eps = eps;
    c.k = l1_k(eps);
    c.dim = 2;
    c.original_coords = original_coords;
    const long m = 1L << c.k;
    const double top = static_cast<double>(original_coords ? m : m - 1);
    auto s = [&](long i) { return Point{static_cast<double>(i), top - static_cast<double>(i)}; };
    for (long i = 0; i < m; ++i) c.s1.push_back(s(i));
    // Dyadic index intervals [lo, hi]; the lower-left corner of their bounding box is (lo, y(hi)).
    auto corner = [&](long lo, long hi) { return Point{static_cast<double>(lo), top - static_cast<double>(hi)}; };
    for (long size = m; size >= 2; size /= 2) {
        for (long lo = 0; lo < m; lo += size) {
            const long hi = lo + size - 1, mid = lo + size / 2 - 1;
            const Point p = corner(lo, hi);
            c.hat1.push_back(p);
            // Left half sits straight above, right half straight to the right.
            c.segments.push_back({p, size == 2 ? s(lo) : corner(lo, mid)});
            c.segments.push_back({p, size == 2 ? s(hi) : corner(mid + 1, hi)});
        }
    }
    c.tree_segments = c.segments.size();
    for (long i = 0; i + 1 < m; ++i) {
        const Point bend{static_cast<double>(i), top - static_cast<double>(i) - 1.0};
        c.segments.push_back({s(i), bend});
        c.segments.push_back({bend, s(i + 1)});
    }
    c.s2 = reflect_all(c.s1);
    c.hat2 = reflect_all(c.hat1);
    const std::size_t half = c.segments.size();
    for (std::size_t i = 0; i < half; ++i) c.segments.push_back({reflect(c.segments[i].a), reflect(c.segments[i].b)});
    if (original_coords) c.segments.push_back({corner(0, m - 1), reflect(corner(0, m - 1))});
    return c;
}

SpannerGraph build_manhattan_2d(const L1Construction& c) {
    if (c.dim != 2) throw std::invalid_argument("build_manhattan_2d: construction is not planar");
    return manhattan_network(c);
}

L1Construction build_l1_highdim(double eps, std::size_t dim, L1Network network) {
    if (dim < 3) throw std::invalid_argument("build_l1_highdim: need dim >= 3, use build_l1_2d");
    L1Construction c;
    c.eps = eps;
    c.k = l1_k(eps);
    c.dim = dim;
    const long side0 = 1L << c.k;
    const long plane = side0 - 2;
    if (plane < 0) throw std::invalid_argument("build_l1_highdim: eps too large");
    // S1 by odometer over [0, plane]^d.
    std::vector<long> x(dim, 0);
    for (;;) {
        long sum = 0;
        for (long v : x) sum += v;
        if (sum == plane) {
            Point p(dim);
            for (std::size_t i = 0; i < dim; ++i) p[i] = static_cast<double>(x[i]);
            c.s1.push_back(p);
        }
        std::size_t i = 0;
        while (i < dim && ++x[i] > plane) x[i++] = 0;
        if (i == dim) break;
    }
    std::set<Point> s1_set(c.s1.begin(), c.s1.end());
    std::set<Point> corners;
    std::vector<std::vector<long>> level{std::vector<long>(dim, 0)};
    const std::size_t n_corners = std::size_t{1} << dim;
    for (long side = side0;; side /= 2) {
        auto cube = [&](const std::vector<long>& lo, long len, bool record) {
            std::vector<Point> pts(n_corners, Point(dim));
            for (std::size_t mask = 0; mask < n_corners; ++mask)
                for (std::size_t i = 0; i < dim; ++i)
                    pts[mask][i] = static_cast<double>(lo[i] + ((mask >> i) & 1 ? len : 0));
            for (std::size_t mask = 0; mask < n_corners; ++mask) {
                if (record) corners.insert(pts[mask]);
                for (std::size_t i = 0; i < dim; ++i)
                    if (!((mask >> i) & 1)) c.segments.push_back({pts[mask], pts[mask | (std::size_t{1} << i)]});
            }
        };
        for (const auto& lo : level) {
            cube(lo, side, true);
            if (network == L1Network::refined && side > 1)
                for (std::size_t mask = 0; mask < n_corners; ++mask) {
                    std::vector<long> sub = lo;
                    for (std::size_t i = 0; i < dim; ++i)
                        if ((mask >> i) & 1) sub[i] += side / 2;
                    cube(sub, side / 2, false);
                }
        }
        if (side == 1) break;
        std::vector<std::vector<long>> next;
        const long h = side / 2;
        for (const auto& lo : level)
            for (std::size_t mask = 0; mask < n_corners; ++mask) {
                std::vector<long> sub = lo;
                long sum = 0;
                for (std::size_t i = 0; i < dim; ++i) {
                    if ((mask >> i) & 1) sub[i] += h;
                    sum += sub[i];
                }
                // Closed cube of integer corners meets the hyperplane iff its corner sums bracket it.
                if (sum <= plane && plane <= sum + static_cast<long>(dim) * h) next.push_back(sub);
            }
        level = std::move(next);
    }
    for (const auto& p : corners)
        if (!s1_set.count(p)) c.hat1.push_back(p);
    c.tree_segments = c.segments.size();
    c.s2 = reflect_all(c.s1);
    c.hat2 = reflect_all(c.hat1);
    const std::size_t half = c.segments.size();
    for (std::size_t i = 0; i < half; ++i) c.segments.push_back({reflect(c.segments[i].a), reflect(c.segments[i].b)});
    return c;
}

SpannerGraph manhattan_network(const L1Construction& c) {
    SpannerGraph g(c.dim, Metric::l1);
    std::map<Point, VertexId> ids;
    for (const auto& p : c.all_points()) ids.emplace(p, g.add_vertex(p, VertexKind::input));
    for (const auto& s : c.segments)
        for (const Point* p : {&s.a, &s.b})
            if (!ids.count(*p)) ids.emplace(*p, g.add_vertex(*p, VertexKind::steiner));
    const auto lines = cover_lines(c.segments, c.segments.size());
    // Vertices per line, sorted by the free coordinate.
    std::map<LineKey, std::vector<std::pair<double, VertexId>>> on_line;
    for (const auto& [p, v] : ids)
        for (std::size_t axis = 0; axis < c.dim; ++axis) {
            auto key = line_of(p, static_cast<int>(axis));
            if (lines.count(key)) on_line[key].emplace_back(p[axis], v);
        }
    for (auto& [key, verts] : on_line) {
        std::sort(verts.begin(), verts.end());
        const auto& iv = lines.at(key);
        for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
            const double a = verts[i].first, b = verts[i + 1].first;
            const bool covered = std::any_of(iv.begin(), iv.end(), [&](const auto& x) { return x.first <= a && b <= x.second; });
            if (covered) g.add_edge(verts[i].second, verts[i + 1].second);
        }
    }
    return g;
}

double tree_weight(const L1Construction& c) {
    double w = 0.0;
    for (const auto& [key, iv] : cover_lines(c.segments, c.tree_segments))
        for (const auto& x : iv) w += x.second - x.first;
    return w;
}

BipartiteCheck verify_bipartite_necessity(const L1Construction& c) {
    BipartiteCheck out;
    out.cross_distance = c.cross_distance();
    std::vector<Point> all = c.s1;
    all.insert(all.end(), c.s2.begin(), c.s2.end());
    for (const auto& p : c.s1)
        for (const auto& q : c.s2) {
            const double direct = distance(p, q, Metric::l1);
            out.max_allowed = std::max(out.max_allowed, (1.0 + c.eps) * direct);
            for (const auto& w : all) {
                if (w == p || w == q) continue;
                const double detour = distance(p, w, Metric::l1) + distance(w, q, Metric::l1);
                out.min_detour = std::min(out.min_detour, detour);
                if (detour <= (1.0 + c.eps) * direct) out.necessary = false;
            }
        }
    return out;
}

double forced_bipartite_weight(const L1Construction& c) {
    return static_cast<double>(c.s1.size()) * static_cast<double>(c.s2.size()) * c.cross_distance();
}

}  // namespace spanlab
