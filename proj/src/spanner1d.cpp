#include "spanlab/spanner1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spanlab {

double safe_closeness(double eps) { return eps / (4.0 + 2.0 * eps); }

Spanner1D::Spanner1D(double eps, double closeness)
    : eps_(eps), closeness_(closeness == 0.0 ? safe_closeness(eps) : closeness), graph_(1) {
    if (!(eps > 0.0)) throw std::invalid_argument("Spanner1D: eps must be positive");
    if (!(closeness_ > 0.0 && closeness_ < 0.5)) throw std::invalid_argument("Spanner1D: closeness must be in (0, 1/2)");
}

void Spanner1D::add_interval(VertexId a, VertexId b, std::vector<EdgeId>& out) {
    auto id = graph_.add_edge(a, b);
    if (!id) throw std::logic_error("Spanner1D: duplicate interval edge");
    out.push_back(*id);
    double l = graph_.vertex(a).point[0], r = graph_.vertex(b).point[0];
    if (l > r) std::swap(l, r);
    intervals_.push_back({l, r, points_.size() - 1});
}

std::ptrdiff_t Spanner1D::containing_edge(double x) const {
    if (sorted_.empty() || x <= sorted_.begin()->first || x >= sorted_.rbegin()->first) return -1;
    if (sorted_.count(x)) return -1;
    auto it = gap_.upper_bound(x);
    --it;
    return it->second;
}

std::vector<EdgeId> Spanner1D::insert(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Spanner1D: non-finite coordinate");
    std::vector<EdgeId> out;
    const VertexId v = graph_.add_vertex({x});
    points_.push_back({x, points_.size()});

    if (auto hit = sorted_.find(x); hit != sorted_.end()) {
        auto id = graph_.add_edge(hit->second, v);
        out.push_back(*id);
        return out;
    }
    if (sorted_.empty()) {
        sorted_[x] = v;
        return out;
    }
    const double lo = sorted_.begin()->first, hi = sorted_.rbegin()->first;
    if (x < lo || x > hi) {
        const VertexId nearest = x < lo ? sorted_.begin()->second : sorted_.rbegin()->second;
        add_interval(nearest, v, out);
        const std::ptrdiff_t e = static_cast<std::ptrdiff_t>(intervals_.size()) - 1;
        gap_[x < lo ? x : hi] = e;
        sorted_[x] = v;
        return out;
    }

    auto right = sorted_.upper_bound(x);
    auto left = std::prev(right);
    const double a = left->first, b = right->first;
    const std::ptrdiff_t pq = gap_.at(a);
    const Interval e = intervals_[pq];
    const double px = x - e.left, xq = e.right - x, len = e.right - e.left;

    bool add_left = false, add_right = false;
    if (std::min(px, xq) > closeness_ * len) {
        add_left = add_right = true;
    } else if (px <= xq) {
        add_left = true;
    } else {
        add_right = true;
    }
    std::ptrdiff_t left_gap = pq, right_gap = pq;
    if (add_left) {
        add_interval(left->second, v, out);
        left_gap = static_cast<std::ptrdiff_t>(intervals_.size()) - 1;
    }
    if (add_right) {
        add_interval(v, right->second, out);
        right_gap = static_cast<std::ptrdiff_t>(intervals_.size()) - 1;
    }
    gap_[a] = left_gap;
    gap_[x] = right_gap;
    (void)b;
    sorted_[x] = v;
    return out;
}

std::vector<double> Spanner1D::monotone_path() const {
    std::vector<double> out;
    out.reserve(sorted_.size());
    for (const auto& [x, v] : sorted_) out.push_back(x);
    return out;
}

double Spanner1D::monotone_path_weight() const {
    double acc = 0.0;
    const double* prev = nullptr;
    for (const auto& kv : sorted_) {
        if (prev) acc += kv.first - *prev;
        prev = &kv.first;
    }
    return acc;
}

std::vector<StructureViolation> check_structure(std::span<const Interval> edges,
                                                std::span<const TimedPoint> points, double eps) {
    return check_structure_with(edges, points, safe_closeness(eps));
}

std::vector<StructureViolation> check_structure_with(std::span<const Interval> edges,
                                                     std::span<const TimedPoint> points, double closeness) {
    std::vector<StructureViolation> out;

    // (P1) via a sparse table of minimum insertion step over the sorted points.
    std::vector<TimedPoint> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](const TimedPoint& a, const TimedPoint& b) {
        return a.x < b.x || (a.x == b.x && a.step < b.step);
    });
    const std::size_t n = pts.size();
    std::vector<std::vector<std::size_t>> table;
    if (n > 0) {
        table.emplace_back(n);
        for (std::size_t i = 0; i < n; ++i) table[0][i] = pts[i].step;
        for (std::size_t k = 1; (std::size_t{1} << k) <= n; ++k) {
            const std::size_t half = std::size_t{1} << (k - 1);
            table.emplace_back(n - (std::size_t{1} << k) + 1);
            for (std::size_t i = 0; i < table[k].size(); ++i)
                table[k][i] = std::min(table[k - 1][i], table[k - 1][i + half]);
        }
    }
    auto range_min = [&](std::size_t lo, std::size_t hi) {  // inclusive lo, exclusive hi
        std::size_t k = 0;
        while ((std::size_t{2} << k) <= hi - lo) ++k;
        return std::min(table[k][lo], table[k][hi - (std::size_t{1} << k)]);
    };
    auto by_x = [](const TimedPoint& p, double x) { return p.x < x; };
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto& e = edges[i];
        auto lo = std::upper_bound(pts.begin(), pts.end(), e.left,
                                   [](double x, const TimedPoint& p) { return x < p.x; });
        auto hi = std::lower_bound(pts.begin(), pts.end(), e.right, by_x);
        if (lo >= hi) continue;
        const std::size_t m = range_min(lo - pts.begin(), hi - pts.begin());
        if (m < e.step)
            out.push_back({Property::p1, i, m,
                           "interior held a point inserted at step " + std::to_string(m)});
    }

    // (P2) and (P3): sweep intervals by (left asc, right desc) with a nesting stack.
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (edges[a].left != edges[b].left) return edges[a].left < edges[b].left;
        if (edges[a].right != edges[b].right) return edges[a].right > edges[b].right;
        return a < b;
    });
    std::vector<std::size_t> stack;
    const double shrink = 1.0 - closeness;
    for (std::size_t idx : order) {
        const auto& e = edges[idx];
        while (!stack.empty() && edges[stack.back()].right <= e.left) stack.pop_back();
        if (!stack.empty()) {
            const auto& top = edges[stack.back()];
            if (e.right <= top.right) {
                const double inner = e.right - e.left, outer = top.right - top.left;
                if (!leq_tol(inner, shrink * outer))
                    out.push_back({Property::p3, stack.back(), idx,
                                   "nested length " + std::to_string(inner) + " > " +
                                       std::to_string(shrink * outer)});
            } else {
                out.push_back({Property::p2, stack.back(), idx, "intervals overlap"});
            }
        }
        stack.push_back(idx);
    }
    return out;
}

std::vector<StructureViolation> check_structure(const Spanner1D& s) {
    return check_structure_with(s.intervals(), s.points(), s.closeness());
}

double opt_1d(std::span<const double> points) {
    if (points.size() < 2) return 0.0;
    auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    return *hi - *lo;
}

}  // namespace spanlab
