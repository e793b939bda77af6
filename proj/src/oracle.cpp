#include "spanlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace spanlab {

namespace {

struct Pair {
    double d;
    std::size_t u, v;
};

std::vector<Pair> sorted_pairs(std::span<const Point> points, Metric m) {
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) pairs.push_back({distance(points[i], points[j], m), i, j});
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });
    return pairs;
}

/// A* from s to t over adjacency lists; vertices whose metric lower bound exceeds `bound` are
/// not expanded. `dist` must be all kInf on entry and is restored before returning.
double bounded_distance(const std::vector<std::vector<std::pair<std::size_t, double>>>& adj,
                        std::span<const Point> points, Metric m, std::size_t s, std::size_t t, double bound,
                        std::vector<double>& dist, std::vector<std::size_t>& touched) {
    const double slack = bound + kRelTol * std::max(1.0, bound);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    touched.clear();
    dist[s] = 0.0;
    touched.push_back(s);
    pq.push({distance(points[s], points[t], m), s});
    double out = kInf;
    while (!pq.empty()) {
        const auto [f, u] = pq.top();
        pq.pop();
        if (f > slack) break;
        if (u == t) {
            out = dist[u];
            break;
        }
        const double d = dist[u];
        if (f > d + distance(points[u], points[t], m)) continue;
        for (const auto& [v, w] : adj[u])
            if (d + w < dist[v]) {
                const double fv = d + w + distance(points[v], points[t], m);
                if (fv > slack) continue;
                if (dist[v] == kInf) touched.push_back(v);
                dist[v] = d + w;
                pq.push({fv, v});
            }
    }
    for (std::size_t v : touched) dist[v] = kInf;
    return out;
}

class ExactSearch {
public:
    ExactSearch(std::span<const Point> points, double t, Metric m) : n_(points.size()), t_(t) {
        pairs_ = sorted_pairs(points, m);
        d_.assign(n_ * n_, 0.0);
        for (const auto& p : pairs_) d_[p.u * n_ + p.v] = d_[p.v * n_ + p.u] = p.d;
        state_.assign(pairs_.size(), 0);
        // A pair whose cheapest detour through a third point is too long needs its own edge.
        for (std::size_t e = 0; e < pairs_.size(); ++e) {
            const auto& p = pairs_[e];
            double best = kInf;
            for (std::size_t w = 0; w < n_; ++w)
                if (w != p.u && w != p.v) best = std::min(best, d(p.u, w) + d(w, p.v));
            if (!leq_tol(best, t_ * p.d)) state_[e] = 1;
        }
    }

    void run(double incumbent, std::vector<std::size_t> incumbent_edges) {
        best_ = incumbent;
        best_edges_ = std::move(incumbent_edges);
        dfs(0);
    }

    double best() const { return best_; }
    const std::vector<std::size_t>& best_edges() const { return best_edges_; }
    const std::vector<Pair>& pairs() const { return pairs_; }
    std::size_t nodes() const { return nodes_; }

private:
    double d(std::size_t a, std::size_t b) const { return d_[a * n_ + b]; }

    /// All-pairs distances over edges with state >= min_state (1 = chosen, 0 = undecided).
    std::vector<double> closure(int min_state) const {
        std::vector<double> g(n_ * n_, kInf);
        for (std::size_t i = 0; i < n_; ++i) g[i * n_ + i] = 0.0;
        for (std::size_t e = 0; e < pairs_.size(); ++e)
            if (state_[e] >= min_state) {
                const auto& p = pairs_[e];
                g[p.u * n_ + p.v] = g[p.v * n_ + p.u] = p.d;
            }
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t j = 0; j < n_; ++j)
                    g[i * n_ + j] = std::min(g[i * n_ + j], g[i * n_ + k] + g[k * n_ + j]);
        return g;
    }

    bool satisfied(const std::vector<double>& g) const {
        for (const auto& p : pairs_)
            if (!leq_tol(g[p.u * n_ + p.v], t_ * p.d)) return false;
        return true;
    }

    /// Chosen weight plus the cheapest undecided edges that connect the chosen components.
    double lower_bound(double chosen) const {
        std::vector<std::size_t> parent(n_);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t e = 0; e < pairs_.size(); ++e)
            if (state_[e] == 1) parent[find(pairs_[e].u)] = find(pairs_[e].v);
        double lb = chosen;
        for (std::size_t e = 0; e < pairs_.size(); ++e) {
            if (state_[e] != 0) continue;
            const std::size_t a = find(pairs_[e].u), b = find(pairs_[e].v);
            if (a != b) {
                parent[a] = b;
                lb += pairs_[e].d;
            }
        }
        return lb;
    }

    void dfs(std::size_t next) {
        ++nodes_;
        double chosen = 0.0;
        for (std::size_t e = 0; e < pairs_.size(); ++e)
            if (state_[e] == 1) chosen += pairs_[e].d;
        if (chosen >= best_) return;
        if (satisfied(closure(1))) {
            best_ = chosen;
            best_edges_.clear();
            for (std::size_t e = 0; e < pairs_.size(); ++e)
                if (state_[e] == 1) best_edges_.push_back(e);
            return;
        }
        if (lower_bound(chosen) >= best_) return;
        if (!satisfied(closure(0))) return;
        while (next < pairs_.size() && state_[next] != 0) ++next;
        if (next == pairs_.size()) return;
        state_[next] = 1;
        dfs(next + 1);
        state_[next] = -1;
        dfs(next + 1);
        state_[next] = 0;
    }

    std::size_t n_;
    double t_;
    std::vector<Pair> pairs_;
    std::vector<double> d_;
    std::vector<int> state_;  // 1 chosen, 0 undecided, -1 excluded
    double best_ = kInf;
    std::vector<std::size_t> best_edges_;
    std::size_t nodes_ = 0;
};

}  // namespace

OracleMethod parse_oracle_method(std::string_view name) {
    if (name == "greedy") return OracleMethod::greedy;
    if (name == "mst") return OracleMethod::mst;
    if (name == "exact") return OracleMethod::exact;
    throw std::invalid_argument("unknown oracle method: " + std::string(name));
}

std::string_view oracle_method_name(OracleMethod m) {
    switch (m) {
        case OracleMethod::greedy: return "greedy";
        case OracleMethod::mst: return "mst";
        case OracleMethod::exact: return "exact";
    }
    return "?";
}

OracleResult greedy_spanner(std::span<const Point> points, double t, Metric m) {
    if (!(t > 1.0)) throw std::invalid_argument("greedy_spanner: need t > 1");
    OracleResult r;
    r.method = OracleMethod::greedy;
    const std::size_t n = points.size();
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
    std::vector<double> dist(n, kInf);
    std::vector<std::size_t> touched;
    for (const auto& p : sorted_pairs(points, m)) {
        const double bound = t * p.d;
        if (leq_tol(bounded_distance(adj, points, m, p.u, p.v, bound, dist, touched), bound)) continue;
        adj[p.u].emplace_back(p.v, p.d);
        adj[p.v].emplace_back(p.u, p.d);
        r.edges.emplace_back(p.u, p.v);
        r.weight += p.d;
    }
    return r;
}

OracleResult mst_oracle(std::span<const Point> points, Metric m) {
    OracleResult r;
    r.method = OracleMethod::mst;
    const std::size_t n = points.size();
    if (n == 0) return r;
    std::vector<double> key(n, kInf);
    std::vector<std::size_t> from(n, 0);
    std::vector<bool> in(n, false);
    key[0] = 0.0;
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v] && (u == n || key[v] < key[u])) u = v;
        in[u] = true;
        if (it > 0) {
            r.edges.emplace_back(std::min(from[u], u), std::max(from[u], u));
            r.weight += key[u];
        }
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v]) {
                const double d = distance(points[u], points[v], m);
                if (d < key[v]) {
                    key[v] = d;
                    from[v] = u;
                }
            }
    }
    return r;
}

OracleResult exact_opt_small(std::span<const Point> points, double t, Metric m, bool allow_steiner_subdivision_only) {
    (void)allow_steiner_subdivision_only;
    if (points.size() > kExactMaxPoints)
        throw std::invalid_argument("exact_opt_small: at most " + std::to_string(kExactMaxPoints) + " points");
    if (!(t >= 1.0)) throw std::invalid_argument("exact_opt_small: need t >= 1");
    OracleResult r;
    r.method = OracleMethod::exact;
    r.certified = true;
    if (points.size() < 2) return r;
    ExactSearch search(points, t, m);
    // The complete graph is always feasible; it seeds the incumbent just above its weight.
    std::vector<std::size_t> all(search.pairs().size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    double total = 0.0;
    for (const auto& p : search.pairs()) total += p.d;
    search.run(std::nextafter(total, kInf), all);
    for (std::size_t e : search.best_edges()) {
        const auto& p = search.pairs()[e];
        r.edges.emplace_back(p.u, p.v);
        r.weight += p.d;
    }
    r.nodes = search.nodes();
    return r;
}

double opt_lower_bound(std::span<const Point> points, Metric m) {
    if (points.size() < 2) throw std::invalid_argument("opt_lower_bound: need at least two points");
    return mst_weight(points, m);
}

SpannerGraph oracle_graph(std::span<const Point> points, const OracleResult& r, Metric m) {
    SpannerGraph g(points.empty() ? 1 : points[0].size(), m);
    for (const auto& p : points) g.add_vertex(p);
    for (const auto& [u, v] : r.edges) g.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
    return g;
}

}  // namespace spanlab
