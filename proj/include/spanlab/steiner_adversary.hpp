#pragma once

#include <cstddef>
#include <vector>

#include "spanlab/graph.hpp"

namespace spanlab {

/// Region between the circular arcs of sagitta h_lo and h_hi through s and t (signed: positive
/// sagittas bulge to the left of s -> t).
struct Lens {
    Point s;
    Point t;
    double h_lo = 0.0;
    double h_hi = 0.0;
};

using Region = std::vector<Lens>;

/// Signed sagitta of the arc from s to t through x; NaN when x is outside the chord strip.
double arc_sagitta(const Point& s, const Point& t, const Point& x);
/// Length of an arc with chord length L and sagitta h.
double arc_length(double chord, double sagitta);
/// Point at fraction tau of the arc length of the arc (s, t, h).
Point arc_point(const Point& s, const Point& t, double h, double tau);

bool lens_contains(const Lens& lens, const Point& x);
/// Length of segment ab inside the lens, from the exact arc crossings.
double clip_length(const Point& a, const Point& b, const Lens& lens);

struct RegionWeight {
    double weight = 0.0;
    double error_bound = 0.0;
};

/// Total length of the alive graph edges clipped to the region (2D).
RegionWeight region_weight(const SpannerGraph& g, const Region& region);

struct SteinerAdversaryConfig {
    double eps = 0.25;
    /// Stretch of the ellipses that must fit in the region (default 1 + eps).
    double ellipse_eps = 0.0;
    /// Ellipses are scaled by this factor around their centre before the fit test.
    double clearance = 1.1;
    std::size_t max_batch = 10000;
    std::size_t ellipse_samples = 72;
};

struct StagePlan {
    std::size_t stage = 0;  // index of the stage these points form
    std::vector<Point> batch;
    Region region;
    std::size_t k = 0;
    double graph_weight = 0.0;
    double weight_before = 0.0;   // |G cap R| when the region was chosen
    double error_bound = 0.0;
    double budget = 0.0;          // cap on the concatenated arc weight
    double chord_sum = 0.0;       // chords of consecutive batch points whose ellipse fits
};

/// Adaptive lower-bound adversary in the plane: every stage puts points along arcs inside the
/// lightest lenses of the current spanner, keeping the monotone path within 1 + eps.
class SteinerAdversary {
public:
    explicit SteinerAdversary(const SteinerAdversaryConfig& config);

    /// Stage 1: s = (0, 0) and t = (1, 0).
    std::vector<Point> initial();
    /// Next batch against the spanner built so far; throws when the region is too thin.
    StagePlan plan(const SpannerGraph& g);
    /// Records that the last planned batch was served; returns |G cap R| - weight_before.
    double commit(const SpannerGraph& g);

    std::size_t stage() const { return stage_; }
    const std::vector<Point>& path() const { return path_; }
    /// Weight of the monotone path through every point placed so far.
    double witness_weight() const;
    /// 1 + (1 - 2^-i) eps after stage i.
    double witness_bound(std::size_t stage) const;
    const SteinerAdversaryConfig& config() const { return config_; }

private:
    SteinerAdversaryConfig config_;
    std::size_t stage_ = 0;
    std::vector<Point> path_;
    StagePlan pending_;
    bool has_pending_ = false;
};

}  // namespace spanlab
