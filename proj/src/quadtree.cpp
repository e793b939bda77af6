#include "spanlab/quadtree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spanlab {

std::size_t CellKeyHash::operator()(const std::vector<std::int64_t>& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto c : k) {
        h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

QuadtreeSpanner::QuadtreeSpanner(const QuadtreeConfig& config)
    : config_(config), graph_(config.dim, config.metric) {
    if (!(config.eps > 0.0)) throw std::invalid_argument("quadtree: eps must be positive");
    if (!(config.rule.c1 > 0.0 && config.rule.c1 < config.rule.c2))
        throw std::invalid_argument("quadtree: need 0 < c1 < c2");
    if (!(config.base_scale > 0.0)) throw std::invalid_argument("quadtree: base scale must be positive");
}

std::vector<std::int64_t> QuadtreeSpanner::cell_of(const Point& p, int l) const {
    const double side = std::ldexp(config_.base_scale, -l);
    std::vector<std::int64_t> key(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        key[i] = static_cast<std::int64_t>(std::floor(p[i] / side));
    return key;
}

std::pair<int, int> QuadtreeSpanner::required_range() const {
    const double eps = config_.eps, u = config_.base_scale;
    // Annulus at side a holds distance D iff a in [eps D / c2, eps D / c1].
    const int top = static_cast<int>(std::ceil(std::log2(config_.rule.c1 * u / (eps * diam_)))) - 1;
    const int bot = static_cast<int>(std::floor(std::log2(config_.rule.c2 * u / (eps * dmin_)))) + 1;
    return {top, bot};
}

void QuadtreeSpanner::register_point(int l, VertexId v, std::vector<EdgeId>* fresh) {
    GridLevel& lv = levels_.at(l);
    auto key = cell_of(graph_.vertex(v).point, l);
    auto [it, created] = lv.cells.try_emplace(std::move(key), CellEntry{v, 0});
    ++it->second.occupants;
    if (!created) return;
    const double lo = config_.rule.c1 * lv.side / config_.eps;
    const double hi = config_.rule.c2 * lv.side / config_.eps;
    const Point& pv = graph_.vertex(v).point;
    for (VertexId r : lv.representatives) {
        const double d = distance(pv, graph_.vertex(r).point, config_.metric);
        if (d < lo || d > hi) continue;
        if (auto e = graph_.find_edge(r, v)) {
            lv.edges.push_back(*e);
            continue;
        }
        const EdgeId e = *graph_.add_edge(r, v);
        lv.edges.push_back(e);
        if (fresh) fresh->push_back(e);
    }
    lv.representatives.push_back(v);
}

void QuadtreeSpanner::instantiate(int l) {
    GridLevel lv;
    lv.side = std::ldexp(config_.base_scale, -l);
    levels_.emplace(l, std::move(lv));
}

std::vector<EdgeId> QuadtreeSpanner::insert(const Point& p) {
    if (p.size() != config_.dim) throw std::invalid_argument("quadtree: dimension mismatch");
    std::vector<EdgeId> fresh;
    const VertexId v = graph_.add_vertex(p);
    if (auto it = first_copy_.find(p); it != first_copy_.end()) {
        fresh.push_back(*graph_.add_edge(it->second, v));
        return fresh;
    }
    for (VertexId q : points_) {
        const double d = distance(p, graph_.vertex(q).point, config_.metric);
        dmin_ = std::min(dmin_, d);
        diam_ = std::max(diam_, d);
    }
    first_copy_.emplace(p, v);
    if (!points_.empty()) {
        auto [top, bot] = required_range();
        for (int l = top; l <= bot; ++l) {
            if (levels_.count(l)) continue;
            instantiate(l);
            for (VertexId q : points_) register_point(l, q, &fresh);
        }
    }
    points_.push_back(v);
    for (auto& [l, lv] : levels_) register_point(l, v, &fresh);
    return fresh;
}

std::vector<int> QuadtreeSpanner::levels() const {
    std::vector<int> out;
    for (const auto& kv : levels_) out.push_back(kv.first);
    return out;
}

const GridLevel* QuadtreeSpanner::level(int l) const {
    auto it = levels_.find(l);
    return it == levels_.end() ? nullptr : &it->second;
}

std::vector<EdgeId> QuadtreeSpanner::level_edges(int l) const {
    auto it = levels_.find(l);
    if (it == levels_.end()) return {};
    return it->second.edges;
}

}  // namespace spanlab
