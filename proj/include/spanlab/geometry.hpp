#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spanlab {

using Point = std::vector<double>;

enum class Metric { l1, l2 };

Metric parse_metric(std::string_view name);
std::string_view metric_name(Metric m);

/// Relative tolerance used by every geometric comparison.
inline constexpr double kRelTol = 1e-9;

/// a <= b up to relative tolerance on the larger magnitude.
bool leq_tol(double a, double b);

double distance(const Point& p, const Point& q, Metric m = Metric::l2);

/// True iff |pa| + |pb| <= (1 + eps)|ab| in L2.
bool ellipse_contains(const Point& a, const Point& b, double eps, const Point& p);

/// Angle in [0, pi/2] between the undirected lines spanned by u and v.
double undirected_angle(const Point& u, const Point& v);

Point sub(const Point& a, const Point& b);
Point add(const Point& a, const Point& b);
Point scale(const Point& a, double s);
double dot(const Point& a, const Point& b);
double norm(const Point& a);

struct Segment {
    Point a;
    Point b;
};

struct NearParallel {
    double weight = 0.0;
    std::size_t skipped = 0;  // zero-length edges ignored
};

/// Weight of path edges whose direction is within eps^(1/2) of ab.
NearParallel near_parallel_weight(std::span<const Segment> path, const Point& a,
                                  const Point& b, double eps);

}  // namespace spanlab
