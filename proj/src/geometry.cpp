#include "spanlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spanlab {

Metric parse_metric(std::string_view name) {
    if (name == "L2" || name == "l2") return Metric::l2;
    if (name == "L1" || name == "l1") return Metric::l1;
    throw std::invalid_argument("unknown metric: " + std::string(name));
}

std::string_view metric_name(Metric m) { return m == Metric::l1 ? "L1" : "L2"; }

bool leq_tol(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return a <= b;
    return a <= b + kRelTol * std::max({1.0, std::abs(a), std::abs(b)});
}

static void check_dims(const Point& p, const Point& q) {
    if (p.size() != q.size())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(p.size()) + " vs " +
                                    std::to_string(q.size()));
}

double distance(const Point& p, const Point& q, Metric m) {
    check_dims(p, q);
    double acc = 0.0;
    if (m == Metric::l1) {
        for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
        return acc;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - q[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

bool ellipse_contains(const Point& a, const Point& b, double eps, const Point& p) {
    const double ab = distance(a, b);
    if (ab == 0.0) throw std::invalid_argument("ellipse_contains: a == b");
    return distance(p, a) + distance(p, b) <= (1.0 + eps) * ab;
}

Point sub(const Point& a, const Point& b) {
    check_dims(a, b);
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Point add(const Point& a, const Point& b) {
    check_dims(a, b);
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Point scale(const Point& a, double s) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

double dot(const Point& a, const Point& b) {
    check_dims(a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(const Point& a) { return std::sqrt(dot(a, a)); }

double undirected_angle(const Point& u, const Point& v) {
    const double nu = norm(u), nv = norm(v);
    if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("undirected_angle: zero vector");
    const double c = std::min(1.0, std::abs(dot(u, v)) / (nu * nv));
    return std::acos(c);
}

NearParallel near_parallel_weight(std::span<const Segment> path, const Point& a, const Point& b,
                                  double eps) {
    if (a.size() < 2) throw std::invalid_argument("near_parallel_weight: needs d >= 2");
    const Point dir = sub(b, a);
    if (norm(dir) == 0.0) throw std::invalid_argument("near_parallel_weight: degenerate ab");
    const double limit = std::sqrt(eps);
    NearParallel out;
    for (const auto& s : path) {
        const Point e = sub(s.b, s.a);
        const double w = norm(e);
        if (w == 0.0) {
            ++out.skipped;
            continue;
        }
        if (undirected_angle(e, dir) <= limit * (1.0 + kRelTol)) out.weight += w;
    }
    return out;
}

}  // namespace spanlab
