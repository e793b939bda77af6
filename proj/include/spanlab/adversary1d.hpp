#pragma once

#include <cstddef>
#include <vector>

namespace spanlab {

struct Adv1DEvent {
    enum class Kind { point, stage_end };
    Kind kind;
    double x = 0.0;
    std::size_t stage = 0;
};

/// Oblivious multi-stage stream on [0, 1]: stage 1 is 1, 0, eps/2, 2 eps/2, ... and every
/// later stage repeats the pattern inside each gap of the current point set, left to right.
class Adversary1D {
public:
    explicit Adversary1D(double eps);

    /// Next point, or a stage_end marker after the last point of a stage.
    Adv1DEvent next();

    double eps() const { return eps_; }
    std::size_t stage() const { return stage_; }
    /// floor(1/eps): points placed per gap.
    std::size_t per_gap() const { return per_gap_; }
    /// Points emitted so far; sorted whenever a stage has ended.
    const std::vector<double>& points() const { return sorted_; }

private:
    void plan_stage();

    double eps_;
    std::size_t per_gap_;
    std::size_t stage_ = 0;
    std::vector<double> pending_;
    std::size_t cursor_ = 0;
    std::vector<double> sorted_;
    bool marker_due_ = false;
};

/// Points of stages 1..stages, in emission order.
std::vector<double> adversary_1d_stream(double eps, std::size_t stages);

/// 1 + (j/2) floor(1/eps).
double adversary_1d_forced_weight(double eps, std::size_t stage);

}  // namespace spanlab
