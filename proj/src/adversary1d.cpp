#include "spanlab/adversary1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spanlab {

Adversary1D::Adversary1D(double eps) : eps_(eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("adversary 1d: need 0 < eps <= 1");
    per_gap_ = static_cast<std::size_t>(std::floor(1.0 / eps + 1e-12));
}

void Adversary1D::plan_stage() {
    ++stage_;
    pending_.clear();
    cursor_ = 0;
    if (stage_ == 1) {
        pending_ = {1.0, 0.0};
        for (std::size_t i = 1; i <= per_gap_; ++i) pending_.push_back(static_cast<double>(i) * eps_ / 2.0);
        return;
    }
    for (std::size_t g = 0; g + 1 < sorted_.size(); ++g) {
        const double a = sorted_[g], b = sorted_[g + 1];
        for (std::size_t i = 1; i <= per_gap_; ++i)
            pending_.push_back(a + static_cast<double>(i) * (eps_ / 2.0) * (b - a));
    }
}

Adv1DEvent Adversary1D::next() {
    if (marker_due_) {
        marker_due_ = false;
        std::sort(sorted_.begin(), sorted_.end());
        return {Adv1DEvent::Kind::stage_end, 0.0, stage_};
    }
    if (cursor_ == pending_.size()) plan_stage();
    const double x = pending_[cursor_++];
    sorted_.push_back(x);
    if (cursor_ == pending_.size()) marker_due_ = true;
    return {Adv1DEvent::Kind::point, x, stage_};
}

std::vector<double> adversary_1d_stream(double eps, std::size_t stages) {
    Adversary1D adv(eps);
    std::vector<double> out;
    if (stages == 0) return out;
    for (;;) {
        const auto ev = adv.next();
        if (ev.kind == Adv1DEvent::Kind::stage_end) {
            if (ev.stage == stages) break;
            continue;
        }
        out.push_back(ev.x);
    }
    return out;
}

double adversary_1d_forced_weight(double eps, std::size_t stage) {
    return 1.0 + static_cast<double>(stage) / 2.0 * std::floor(1.0 / eps + 1e-12);
}

}  // namespace spanlab
