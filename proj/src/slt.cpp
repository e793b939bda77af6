#include "spanlab/slt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spanlab {

const Point& SltTree::node(std::size_t i) const {
    if (i == 0) return root;
    if (i <= leaves.size()) return leaves[i - 1];
    return hubs.at(i - 1 - leaves.size());
}

double affine_distance(const Point& p, const std::vector<Point>& pts) {
    if (pts.empty()) throw std::invalid_argument("affine_distance: no points");
    std::vector<Point> basis;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        Point v = sub(pts[i], pts[0]);
        for (const auto& b : basis) v = sub(v, scale(b, dot(v, b)));
        const double n = norm(v);
        if (n > 1e-9 * std::max(1.0, norm(pts[i]))) basis.push_back(scale(v, 1.0 / n));
    }
    Point r = sub(p, pts[0]);
    for (const auto& b : basis) r = sub(r, scale(b, dot(r, b)));
    return norm(r);
}

namespace {

struct Builder {
    SltTree& tree;
    double eps;
    double kappa0;
    std::vector<double> direct;  // |root leaf|

    std::size_t add_hub(const Point& h) {
        tree.hubs.push_back(h);
        return tree.leaves.size() + tree.hubs.size();
    }

    void link(std::size_t a, std::size_t b) { tree.edges.push_back({a, b}); }

    void leaves_direct(std::size_t parent, const std::vector<std::size_t>& set) {
        for (std::size_t i : set) link(parent, i + 1);
    }

    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split(std::vector<std::size_t> set) const {
        const std::size_t d = tree.root.size();
        std::size_t axis = 0;
        double spread = -1.0;
        for (std::size_t k = 0; k < d; ++k) {
            double lo = kInfD, hi = -kInfD;
            for (std::size_t i : set) {
                lo = std::min(lo, tree.leaves[i][k]);
                hi = std::max(hi, tree.leaves[i][k]);
            }
            if (hi - lo > spread) {
                spread = hi - lo;
                axis = k;
            }
        }
        std::stable_sort(set.begin(), set.end(), [&](std::size_t a, std::size_t b) {
            return tree.leaves[a][axis] < tree.leaves[b][axis];
        });
        const std::size_t half = set.size() / 2;
        return {std::vector<std::size_t>(set.begin(), set.begin() + half),
                std::vector<std::size_t>(set.begin() + half, set.end())};
    }

    Point centre(const std::vector<std::size_t>& set) const {
        const std::size_t d = tree.root.size();
        Point lo(d, kInfD), hi(d, -kInfD);
        for (std::size_t i : set)
            for (std::size_t k = 0; k < d; ++k) {
                lo[k] = std::min(lo[k], tree.leaves[i][k]);
                hi[k] = std::max(hi[k], tree.leaves[i][k]);
            }
        return scale(add(lo, hi), 0.5);
    }

    // Exhaustive choice of hub offsets over the fixed split hierarchy; returns the subtree weight.
    // parent: node point; g: tree distance root->parent; offset: parent's distance to the leaf hull.
    struct Plan {
        double weight = 0.0;
        bool hub = false;
        Point at;
        std::vector<std::size_t> set;
        std::vector<Plan> children;
    };

    static constexpr double kParentward[] = {0.6, 0.3, 0.1};

    bool feasible(double gh, const Point& h, const std::vector<std::size_t>& set) const {
        for (std::size_t i : set)
            if (gh + distance(h, tree.leaves[i]) > (1.0 + eps) * direct[i]) return false;
        return true;
    }

    Plan search(const Point& parent, double g, double offset, const std::vector<std::size_t>& set,
                const std::vector<double>& fractions) {
        Plan best;
        best.set = set;
        best.weight = 0.0;
        for (std::size_t i : set) best.weight += distance(parent, tree.leaves[i]);
        if (set.size() == 1) return best;
        const Point m = centre(set);
        auto consider = [&](bool with_hub, const Point& h, double gh, double y) {
            Plan p;
            p.set = set;
            p.hub = with_hub;
            p.at = h;
            p.weight = with_hub ? distance(parent, h) : 0.0;
            if (set.size() <= 2) {
                for (std::size_t i : set) p.weight += distance(h, tree.leaves[i]);
            } else {
                auto [a, b] = split(set);
                p.children.push_back(search(h, gh, y, a, fractions));
                p.children.push_back(search(h, gh, y, b, fractions));
                p.weight += p.children[0].weight + p.children[1].weight;
            }
            if (p.weight < best.weight) best = std::move(p);
        };
        for (double f : fractions) {
            const double y = offset * f;
            const Point h = add(m, scale(sub(tree.root, m), y / tree.dist));
            const double gh = g + distance(parent, h);
            if (feasible(gh, h, set)) consider(true, h, gh, y);
        }
        for (double f : kParentward) {
            const Point h = add(m, scale(sub(parent, m), f));
            const double gh = g + distance(parent, h);
            if (feasible(gh, h, set)) consider(true, h, gh, offset * f);
        }
        if (set.size() > 2) consider(false, parent, g, offset);
        return best;
    }

    void realize(std::size_t parent, const Plan& p) {
        std::size_t at = parent;
        if (p.hub) {
            at = add_hub(p.at);
            link(parent, at);
        }
        if (p.children.empty()) {
            leaves_direct(at, p.set);
            return;
        }
        for (const auto& c : p.children) realize(at, c);
    }

    // Fixed schedule y = dist / (kappa0 * 2^{1.5 j}) for large leaf sets.
    void serve(std::size_t parent, double g, double offset, const std::vector<std::size_t>& set,
               int level) {
        if (set.size() == 1) {
            link(parent, set[0] + 1);
            return;
        }
        const double y = tree.dist / (kappa0 * std::pow(2.0, 1.5 * level));
        if (y < offset * (1.0 - 1e-12)) {
            const Point m = centre(set);
            const Point h = add(m, scale(sub(tree.root, m), y / tree.dist));
            const double gh = g + distance(tree.node(parent), h);
            if (feasible(gh, h, set)) {
                const std::size_t hub = add_hub(h);
                link(parent, hub);
                if (set.size() <= 2) {
                    leaves_direct(hub, set);
                    return;
                }
                auto [a, b] = split(set);
                serve(hub, gh, y, a, level + 1);
                serve(hub, gh, y, b, level + 1);
                return;
            }
        }
        if (set.size() <= 2) {
            leaves_direct(parent, set);
            return;
        }
        auto [a, b] = split(set);
        serve(parent, g, offset, a, level + 1);
        serve(parent, g, offset, b, level + 1);
    }

    static constexpr double kInfD = 1e300;
};

void measure(SltTree& t, double eps) {
    const std::size_t n = t.node_count();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    t.weight = 0.0;
    for (auto [a, b] : t.edges) {
        const double w = distance(t.node(a), t.node(b));
        t.weight += w;
        adj[a].push_back({b, w});
        adj[b].push_back({a, w});
    }
    std::vector<double> g(n, -1.0);
    std::vector<std::size_t> stack{0};
    g[0] = 0.0;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (auto [v, w] : adj[u])
            if (g[v] < 0.0) {
                g[v] = g[u] + w;
                stack.push_back(v);
            }
    }
    t.max_root_stretch = 1.0;
    bool repaired = false;
    for (std::size_t i = 0; i < t.leaves.size(); ++i) {
        const double d = distance(t.root, t.leaves[i]);
        if (d == 0.0) continue;
        const double s = g[i + 1] / d;
        if (s > (1.0 + eps) * (1.0 + 1e-12)) {
            t.edges.push_back({0, i + 1});
            ++t.repairs;
            repaired = true;
        } else {
            t.max_root_stretch = std::max(t.max_root_stretch, s);
        }
    }
    if (repaired) measure(t, eps);
}

}  // namespace

SltTree build_slt(const Point& root, const std::vector<Point>& leaves, double eps,
                  const SltConfig& config) {
    if (!(eps > 0.0)) throw std::invalid_argument("build_slt: eps must be positive");
    if (leaves.empty()) throw std::invalid_argument("build_slt: no leaves");
    SltTree t;
    t.root = root;
    t.leaves = leaves;
    t.dist = leaves.size() == 1 ? distance(root, leaves[0]) : affine_distance(root, leaves);
    const bool star = config.kind == SltKind::star || leaves.size() == 1 || t.dist <= 0.0;
    if (star) {
        for (std::size_t i = 0; i < leaves.size(); ++i) t.edges.push_back({0, i + 1});
    } else {
        Builder b{t, eps, config.kappa0, {}};
        for (const auto& l : leaves) b.direct.push_back(distance(root, l));
        std::vector<std::size_t> all(leaves.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        if (leaves.size() <= config.search_limit) {
            const std::vector<double> fractions{0.9, 0.7, 0.5, 0.4, 0.3, 0.22, 0.15, 0.1, 0.05};
            b.realize(0, b.search(root, 0.0, t.dist, all, fractions));
        } else {
            b.serve(0, 0.0, t.dist, all, 0);
        }
    }
    measure(t, eps);
    return t;
}

}  // namespace spanlab
