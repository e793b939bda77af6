#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include "spanlab/graph.hpp"
#include "spanlab/quadtree.hpp"
#include "spanlab/steiner.hpp"

namespace spanlab {

enum class AlgorithmKind { line, quadtree, steiner };

AlgorithmKind parse_algorithm(std::string_view name);
std::string_view algorithm_name(AlgorithmKind k);

/// Knobs of the quadtree and Steiner spanners.
struct OnlineOptions {
    AnnulusRule rule;
    SltKind slt = SltKind::dyadic;
    BackboneMode backbone = BackboneMode::lazy;
};

/// Uniform view of the online spanners for the harness and the adversaries.
class OnlineSpanner {
public:
    virtual ~OnlineSpanner() = default;
    virtual void insert(const Point& p) = 0;
    virtual const SpannerGraph& graph() const = 0;
    /// Stretch the algorithm guarantees: 1 + eps, or 1 + 3 eps for the Steiner spanner.
    virtual double stretch_bound() const = 0;
    virtual AlgorithmKind kind() const = 0;
    /// CSV of the algorithm's internal structure: intervals (1d), levels (quadtree), buckets (steiner).
    virtual void write_details(std::ostream& out) const = 0;
    double eps() const { return eps_; }

protected:
    explicit OnlineSpanner(double eps) : eps_(eps) {}
    double eps_;
};

/// `line` needs dim 1; `steiner` needs the L2 metric.
std::unique_ptr<OnlineSpanner> make_online(AlgorithmKind kind, double eps, std::size_t dim,
                                           Metric metric = Metric::l2, const OnlineOptions& options = {});

/// Instance whose guaranteed stretch is 1 + eps (the Steiner spanner runs at eps / 3).
std::unique_ptr<OnlineSpanner> make_online_with_stretch(AlgorithmKind kind, double eps, std::size_t dim,
                                                        Metric metric = Metric::l2,
                                                        const OnlineOptions& options = {});

}  // namespace spanlab
