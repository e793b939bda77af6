#include "spanlab/steiner_adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace spanlab {

namespace {

/// Chord coordinates: origin at the midpoint of st, u along st, v to its left.
struct Chord {
    Point m, e, n;
    double len;

    Chord(const Point& s, const Point& t) {
        if (s.size() != 2 || t.size() != 2) throw std::invalid_argument("lens: points must be 2D");
        len = distance(s, t);
        if (!(len > 0.0)) throw std::invalid_argument("lens: degenerate chord");
        m = scale(add(s, t), 0.5);
        e = scale(sub(t, s), 1.0 / len);
        n = {-e[1], e[0]};
    }
    std::pair<double, double> local(const Point& x) const {
        const double dx = x[0] - m[0], dy = x[1] - m[1];
        return {dx * e[0] + dy * e[1], dx * n[0] + dy * n[1]};
    }
    Point world(double u, double v) const {
        return {m[0] + u * e[0] + v * n[0], m[1] + u * e[1] + v * n[1]};
    }
};

double sagitta_local(double half, double u, double v) {
    if (std::abs(u) > half * (1.0 + 1e-12)) return std::numeric_limits<double>::quiet_NaN();
    if (v == 0.0) return 0.0;
    const double c = (u * u + v * v - half * half) / (2.0 * v);
    const double r = std::hypot(half, c);
    return v > 0.0 ? half * half / (r - c) : -half * half / (r + c);
}

/// Circle through the chord ends with sagitta h: centre (0, c), radius r in chord coordinates.
std::pair<double, double> arc_circle(double half, double h) {
    const double c = (h * h - half * half) / (2.0 * h);
    return {c, std::abs(h - c)};
}

/// Parameters in (0, 1) where segment (ua, va) -> (ub, vb) meets the boundary of sagitta h.
void crossings(double half, double h, double ua, double va, double ub, double vb, std::vector<double>& out) {
    const double du = ub - ua, dv = vb - va;
    if (h == 0.0) {
        if (dv != 0.0) out.push_back(-va / dv);
        return;
    }
    const auto [c, r] = arc_circle(half, h);
    const double a = du * du + dv * dv;
    const double b = 2.0 * (ua * du + (va - c) * dv);
    const double q = ua * ua + (va - c) * (va - c) - r * r;
    const double disc = b * b - 4.0 * a * q;
    if (a == 0.0 || disc < 0.0) return;
    const double sq = std::sqrt(disc);
    out.push_back((-b - sq) / (2.0 * a));
    out.push_back((-b + sq) / (2.0 * a));
}

/// Splits segment ab at every crossing with the listed arcs and the strip sides; calls
/// fn(length, sagitta at the piece midpoint) for pieces inside the strip.
template <class Fn>
void pieces(const Chord& ch, const Point& a, const Point& b, const std::vector<double>& hs, Fn fn) {
    const double half = ch.len / 2.0;
    const auto [ua, va] = ch.local(a);
    const auto [ub, vb] = ch.local(b);
    std::vector<double> ts{0.0, 1.0};
    for (double h : hs) crossings(half, h, ua, va, ub, vb, ts);
    crossings(half, 0.0, ua, va, ub, vb, ts);
    const double du = ub - ua;
    if (du != 0.0) {
        ts.push_back((half - ua) / du);
        ts.push_back((-half - ua) / du);
    }
    std::vector<double> cut;
    for (double t : ts)
        if (t >= 0.0 && t <= 1.0) cut.push_back(t);
    std::sort(cut.begin(), cut.end());
    const double total = distance(a, b);
    for (std::size_t i = 0; i + 1 < cut.size(); ++i) {
        const double t0 = cut[i], t1 = cut[i + 1];
        if (t1 <= t0) continue;
        const double tm = (t0 + t1) / 2.0;
        const double h = sagitta_local(half, ua + tm * (ub - ua), va + tm * (vb - va));
        if (std::isnan(h)) continue;
        fn((t1 - t0) * total, h);
    }
}

struct Box {
    double x0, y0, x1, y1;
    bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

Box lens_box(const Chord& ch, double v0, double v1) {
    Box b{kInf, kInf, -kInf, -kInf};
    for (double u : {-ch.len / 2.0, ch.len / 2.0})
        for (double v : {v0, v1}) {
            const Point p = ch.world(u, v);
            b.x0 = std::min(b.x0, p[0]);
            b.y0 = std::min(b.y0, p[1]);
            b.x1 = std::max(b.x1, p[0]);
            b.y1 = std::max(b.y1, p[1]);
        }
    return b;
}

Box edge_box(const Point& a, const Point& b) {
    return {std::min(a[0], b[0]), std::min(a[1], b[1]), std::max(a[0], b[0]), std::max(a[1], b[1])};
}

}  // namespace

double arc_sagitta(const Point& s, const Point& t, const Point& x) {
    const Chord ch(s, t);
    const auto [u, v] = ch.local(x);
    return sagitta_local(ch.len / 2.0, u, v);
}

double arc_length(double chord, double h) {
    if (h == 0.0) return chord;
    const double ah = std::abs(h);
    const double r = (chord * chord / 4.0 + ah * ah) / (2.0 * ah);
    return r * 4.0 * std::atan(2.0 * ah / chord);
}

Point arc_point(const Point& s, const Point& t, double h, double tau) {
    const Chord ch(s, t);
    const double half = ch.len / 2.0;
    if (h == 0.0) return ch.world(-half + tau * ch.len, 0.0);
    const auto [c, r] = arc_circle(half, h);
    const double phi = 4.0 * std::atan(2.0 * std::abs(h) / ch.len);
    const double start = std::atan2(-c, -half);
    const double a = h > 0.0 ? start - tau * phi : start + tau * phi;
    return ch.world(r * std::cos(a), c + r * std::sin(a));
}

bool lens_contains(const Lens& lens, const Point& x) {
    const double h = arc_sagitta(lens.s, lens.t, x);
    return !std::isnan(h) && h >= lens.h_lo && h <= lens.h_hi;
}

double clip_length(const Point& a, const Point& b, const Lens& lens) {
    const Chord ch(lens.s, lens.t);
    double acc = 0.0;
    pieces(ch, a, b, {lens.h_lo, lens.h_hi}, [&](double len, double h) {
        if (h >= lens.h_lo && h <= lens.h_hi) acc += len;
    });
    return acc;
}

RegionWeight region_weight(const SpannerGraph& g, const Region& region) {
    RegionWeight out;
    if (g.dim() != 2) throw std::invalid_argument("region_weight: graph must be 2D");
    for (const auto& lens : region) {
        const Chord ch(lens.s, lens.t);
        const Box box = lens_box(ch, std::min(0.0, lens.h_lo), std::max(0.0, lens.h_hi));
        for (const auto& e : g.edges()) {
            if (!e.alive || e.weight == 0.0) continue;
            const Point& a = g.vertex(e.u).point;
            const Point& b = g.vertex(e.v).point;
            if (!edge_box(a, b).overlaps(box)) continue;
            out.weight += clip_length(a, b, lens);
            out.error_bound += 1e-12 * e.weight;
        }
    }
    return out;
}

SteinerAdversary::SteinerAdversary(const SteinerAdversaryConfig& config) : config_(config) {
    if (!(config.eps > 0.0 && config.eps < 1.0)) throw std::invalid_argument("steiner adversary: need 0 < eps < 1");
    if (config_.ellipse_eps <= 0.0) config_.ellipse_eps = config_.eps;
    if (!(config_.clearance >= 1.0)) throw std::invalid_argument("steiner adversary: clearance must be >= 1");
}

std::vector<Point> SteinerAdversary::initial() {
    if (stage_ != 0) throw std::logic_error("steiner adversary: initial() called twice");
    path_ = {{0.0, 0.0}, {1.0, 0.0}};
    stage_ = 1;
    return path_;
}

double SteinerAdversary::witness_weight() const {
    double w = 0.0;
    for (std::size_t i = 0; i + 1 < path_.size(); ++i) w += distance(path_[i], path_[i + 1]);
    return w;
}

double SteinerAdversary::witness_bound(std::size_t stage) const {
    return 1.0 + (1.0 - std::ldexp(1.0, -static_cast<int>(stage))) * config_.eps;
}

namespace {

/// Points along the mid arc of one lens, grown outward from the arc midpoint.
struct Run {
    Lens lens;
    double h_mid = 0.0;
    double arc = 0.0;
    std::vector<double> left{0.5};   // tau values, outward from the middle
    std::vector<double> right{0.5};
    bool left_done = false, right_done = false;

    Point at(double tau) const { return arc_point(lens.s, lens.t, h_mid, tau); }
};

bool ellipse_fits(const Lens& lens, const Point& p, const Point& q, double eps, double clearance,
                  std::size_t samples) {
    const double c = distance(p, q) / 2.0;
    if (c == 0.0) return lens_contains(lens, p);
    const double a = (1.0 + eps) * c;
    const double b = std::sqrt(a * a - c * c);
    const Point o = scale(add(p, q), 0.5);
    const Point e = scale(sub(q, p), 1.0 / (2.0 * c));
    const Point n{-e[1], e[0]};
    for (std::size_t i = 0; i < samples; ++i) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(samples);
        const double x = clearance * a * std::cos(phi), y = clearance * b * std::sin(phi);
        if (!lens_contains(lens, {o[0] + x * e[0] + y * n[0], o[1] + x * e[1] + y * n[1]})) return false;
    }
    return true;
}

/// Extends one side of a run until the unreached arc is below `stop` of the arc length.
void grow(Run& run, bool right, double stop, const SteinerAdversaryConfig& cfg, double eps, std::size_t& budget) {
    auto& taus = right ? run.right : run.left;
    bool& done = right ? run.right_done : run.left_done;
    while (!done) {
        if (budget == 0) throw std::runtime_error("steiner adversary: batch exceeds the cap before pruning");
        --budget;
        const double cur = taus.back();
        const double room = right ? 1.0 - cur : cur;
        if (room <= stop) return;
        const Point p = run.at(cur);
        double lo = 0.0, hi = room;
        for (int it = 0; it < 60; ++it) {
            const double mid = (lo + hi) / 2.0;
            const double tau = right ? cur + mid : cur - mid;
            if (ellipse_fits(run.lens, p, run.at(tau), eps, cfg.clearance, cfg.ellipse_samples))
                lo = mid;
            else
                hi = mid;
        }
        if (lo <= 1e-15) {
            done = true;
            return;
        }
        taus.push_back(right ? cur + lo : cur - lo);
    }
}

}  // namespace

StagePlan SteinerAdversary::plan(const SpannerGraph& g) {
    if (stage_ == 0) throw std::logic_error("steiner adversary: call initial() first");
    if (g.dim() != 2) throw std::invalid_argument("steiner adversary: graph must be 2D");
    StagePlan plan;
    plan.stage = stage_ + 1;
    plan.graph_weight = g.total_weight();
    plan.k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(plan.graph_weight)));
    const double w_path = witness_weight();
    plan.budget = witness_bound(stage_ + 1);
    const double ratio = plan.budget / w_path;
    if (!(ratio > 1.0)) throw std::runtime_error("steiner adversary: no weight budget left");
    const std::size_t k = plan.k;
    std::vector<Run> runs;
    for (std::size_t j = 0; j + 1 < path_.size(); ++j) {
        const Point& s = path_[j];
        const Point& t = path_[j + 1];
        const Chord ch(s, t);
        double lo = 0.0, hi = ch.len / 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = (lo + hi) / 2.0;
            (arc_length(ch.len, mid) / ch.len <= ratio ? lo : hi) = mid;
        }
        const double big_h = lo;
        const double step = big_h / static_cast<double>(k);
        std::vector<double> hs(2 * k + 1);
        for (std::size_t m = 0; m <= 2 * k; ++m) hs[m] = -big_h + static_cast<double>(m) * step;
        hs[k] = 0.0;
        std::vector<double> weights(2 * k, 0.0);
        const Box box = lens_box(ch, -big_h, big_h);
        for (const auto& e : g.edges()) {
            if (!e.alive || e.weight == 0.0) continue;
            const Point& a = g.vertex(e.u).point;
            const Point& b = g.vertex(e.v).point;
            if (!edge_box(a, b).overlaps(box)) continue;
            pieces(ch, a, b, hs, [&](double len, double h) {
                if (h < -big_h || h > big_h) return;
                auto m = static_cast<std::size_t>(std::floor((h + big_h) / step));
                m = std::min(m, 2 * k - 1);
                // Pieces on an arc belong to both neighbours; charge the lower lens consistently.
                weights[m] += len;
            });
            plan.error_bound += 1e-12 * e.weight;
        }
        const std::size_t best = static_cast<std::size_t>(std::min_element(weights.begin(), weights.end()) - weights.begin());
        Run run;
        run.lens = {s, t, hs[best], hs[best + 1]};
        run.h_mid = (hs[best] + hs[best + 1]) / 2.0;
        run.arc = arc_length(ch.len, run.h_mid);
        plan.region.push_back(run.lens);
        runs.push_back(std::move(run));
    }
    // Exact weight of the chosen region, independent of the per-lens tally above.
    const RegionWeight before = region_weight(g, plan.region);
    plan.weight_before = before.weight;
    plan.error_bound = std::max(plan.error_bound, before.error_bound);

    const double eps = config_.ellipse_eps;
    auto chord_total = [&]() {
        double acc = 0.0;
        for (const auto& r : runs) {
            Point prev = r.at(r.left.back());
            for (std::size_t i = r.left.size() - 1; i-- > 0;) {
                const Point p = r.at(r.left[i]);
                acc += distance(prev, p);
                prev = p;
            }
            for (std::size_t i = 1; i < r.right.size(); ++i) {
                const Point p = r.at(r.right[i]);
                acc += distance(prev, p);
                prev = p;
            }
        }
        return acc;
    };
    double total = 0.0;
    std::size_t budget = 8 * config_.max_batch;
    for (double stop = 0.05;; stop /= 4.0) {
        for (auto& r : runs) {
            grow(r, false, stop, config_, eps, budget);
            grow(r, true, stop, config_, eps, budget);
        }
        total = chord_total();
        if (total >= 1.0) break;
        const bool stuck = std::all_of(runs.begin(), runs.end(), [](const Run& r) { return r.left_done && r.right_done; });
        if (stuck || stop < 1e-12)
            throw std::runtime_error("steiner adversary: region too thin, fitted chords reach only " + std::to_string(total));
    }
    // Drop the shortest end chords while the fitted chord sum stays >= 1.
    struct End {
        double chord;
        std::size_t run;
        bool right;
        bool operator>(const End& o) const { return chord > o.chord; }
    };
    std::vector<std::vector<Point>> seq(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) {
        for (std::size_t i = runs[r].left.size(); i-- > 1;) seq[r].push_back(runs[r].at(runs[r].left[i]));
        for (double tau : runs[r].right) seq[r].push_back(runs[r].at(tau));
    }
    std::vector<std::size_t> first(runs.size(), 0), last(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) last[r] = seq[r].size() - 1;
    std::priority_queue<End, std::vector<End>, std::greater<>> ends;
    auto push_ends = [&](std::size_t r) {
        if (first[r] > last[r]) return;
        if (first[r] == last[r]) {
            ends.push({0.0, r, false});
            return;
        }
        ends.push({distance(seq[r][first[r]], seq[r][first[r] + 1]), r, false});
        ends.push({distance(seq[r][last[r] - 1], seq[r][last[r]]), r, true});
    };
    for (std::size_t r = 0; r < runs.size(); ++r) push_ends(r);
    while (!ends.empty()) {
        const End e = ends.top();
        ends.pop();
        const std::size_t r = e.run;
        if (first[r] > last[r]) continue;
        // Skip stale entries.
        const double now = first[r] == last[r] ? 0.0
                           : e.right ? distance(seq[r][last[r] - 1], seq[r][last[r]])
                                     : distance(seq[r][first[r]], seq[r][first[r] + 1]);
        if (now != e.chord) continue;
        if (total - e.chord < 1.0 + 1e-12) break;
        total -= e.chord;
        if (first[r] == last[r]) {
            ++first[r];
            continue;
        }
        if (e.right) --last[r];
        else ++first[r];
        push_ends(r);
    }
    plan.chord_sum = total;
    for (std::size_t r = 0; r < runs.size(); ++r)
        for (std::size_t i = first[r]; i <= last[r] && i < seq[r].size(); ++i) plan.batch.push_back(seq[r][i]);
    if (plan.batch.size() > config_.max_batch)
        throw std::runtime_error("steiner adversary: batch of " + std::to_string(plan.batch.size()) +
                                 " points exceeds the cap");
    pending_ = plan;
    has_pending_ = true;
    return plan;
}

double SteinerAdversary::commit(const SpannerGraph& g) {
    if (!has_pending_) throw std::logic_error("steiner adversary: nothing planned");
    has_pending_ = false;
    // Merge the batch into the path: batch points of lens j lie between s_j and s_{j+1}.
    std::vector<Point> merged;
    std::size_t b = 0;
    for (std::size_t j = 0; j + 1 < path_.size(); ++j) {
        merged.push_back(path_[j]);
        const Lens& lens = pending_.region[j];
        while (b < pending_.batch.size() && lens_contains(lens, pending_.batch[b])) merged.push_back(pending_.batch[b++]);
    }
    merged.push_back(path_.back());
    if (b != pending_.batch.size()) throw std::logic_error("steiner adversary: batch outside its lenses");
    path_ = std::move(merged);
    stage_ = pending_.stage;
    return region_weight(g, pending_.region).weight - pending_.weight_before;
}

}  // namespace spanlab
