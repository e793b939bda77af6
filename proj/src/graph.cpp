#include "spanlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

namespace spanlab {

SpannerGraph::SpannerGraph(std::size_t dim, Metric metric) : dim_(dim), metric_(metric) {
    if (dim == 0) throw std::invalid_argument("SpannerGraph: dimension must be >= 1");
}

std::uint64_t SpannerGraph::key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

void SpannerGraph::check_vertex(VertexId v) const {
    if (v >= vertices_.size()) throw std::out_of_range("unknown vertex id " + std::to_string(v));
}

VertexId SpannerGraph::add_vertex(Point p, VertexKind kind) {
    if (p.size() != dim_) throw std::invalid_argument("add_vertex: dimension mismatch");
    for (double c : p)
        if (!std::isfinite(c)) throw std::invalid_argument("add_vertex: non-finite coordinate");
    const auto id = static_cast<VertexId>(vertices_.size());
    vertices_.push_back({std::move(p), kind, vertices_.size()});
    adj_.emplace_back();
    log_.push_back({OpKind::vertex, id, 0});
    return id;
}

EdgeId SpannerGraph::push_edge(VertexId u, VertexId v, double w, std::size_t index) {
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v, w, index, true});
    adj_[u].push_back(id);
    adj_[v].push_back(id);
    lookup_[key(u, v)] = id;
    ++alive_edges_;
    return id;
}

std::optional<EdgeId> SpannerGraph::add_edge(VertexId u, VertexId v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("add_edge: self-loop");
    if (lookup_.count(key(u, v))) return std::nullopt;
    const double w = distance(vertices_[u].point, vertices_[v].point, metric_);
    const EdgeId id = push_edge(u, v, w, edges_.size());
    log_.push_back({OpKind::edge, u, v});
    return id;
}

EdgeId SpannerGraph::add_edge_record(VertexId u, VertexId v, double weight, std::size_t index) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("edge record: self-loop");
    if (lookup_.count(key(u, v))) throw std::invalid_argument("edge record: duplicate edge");
    const double w = distance(vertices_[u].point, vertices_[v].point, metric_);
    if (std::abs(w - weight) > kRelTol * std::max(1.0, w))
        throw std::invalid_argument("edge record: weight differs from metric distance");
    const EdgeId id = push_edge(u, v, weight, index);
    log_.push_back({OpKind::edge, u, v});
    return id;
}

std::pair<EdgeId, EdgeId> SpannerGraph::subdivide(EdgeId e, VertexId x) {
    if (e >= edges_.size() || !edges_[e].alive) throw std::invalid_argument("subdivide: dead edge");
    check_vertex(x);
    const Edge old = edges_[e];
    if (x == old.u || x == old.v) throw std::invalid_argument("subdivide: endpoint");
    const double w1 = distance(vertices_[old.u].point, vertices_[x].point, metric_);
    const double w2 = distance(vertices_[x].point, vertices_[old.v].point, metric_);
    if (std::abs(w1 + w2 - old.weight) > kRelTol * std::max(1.0, old.weight))
        throw std::invalid_argument("subdivide: vertex not on edge");
    if (lookup_.count(key(old.u, x)) || lookup_.count(key(x, old.v)))
        throw std::invalid_argument("subdivide: sub-edge already present");
    edges_[e].alive = false;
    lookup_.erase(key(old.u, old.v));
    --alive_edges_;
    const EdgeId a = push_edge(old.u, x, w1, edges_.size());
    const EdgeId b = push_edge(x, old.v, w2, edges_.size());
    subdivisions_.push_back({e, x, a, b});
    log_.push_back({OpKind::subdivide, e, x});
    return {a, b};
}

std::optional<EdgeId> SpannerGraph::find_edge(VertexId u, VertexId v) const {
    auto it = lookup_.find(key(u, v));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

const Vertex& SpannerGraph::vertex(VertexId v) const {
    check_vertex(v);
    return vertices_[v];
}

const Edge& SpannerGraph::edge(EdgeId e) const {
    if (e >= edges_.size()) throw std::out_of_range("unknown edge id " + std::to_string(e));
    return edges_[e];
}

std::vector<VertexId> SpannerGraph::input_vertices() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].kind == VertexKind::input) out.push_back(v);
    return out;
}

double SpannerGraph::total_weight() const {
    double acc = 0.0;
    for (const auto& e : edges_)
        if (e.alive) acc += e.weight;
    return acc;
}

SpannerGraph SpannerGraph::replay() const {
    SpannerGraph g(dim_, metric_);
    for (const auto& op : log_) {
        switch (op.kind) {
            case OpKind::vertex:
                g.add_vertex(vertices_[op.a].point, vertices_[op.a].kind);
                break;
            case OpKind::edge:
                if (!g.add_edge(op.a, op.b)) throw std::logic_error("replay: duplicate edge");
                break;
            case OpKind::subdivide:
                g.subdivide(op.a, op.b);
                break;
        }
    }
    return g;
}

double graph_weight(const SpannerGraph& g) { return g.total_weight(); }

namespace {

using HeapItem = std::pair<double, VertexId>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

// Compressed adjacency of alive edges.
struct Csr {
    std::vector<std::size_t> offset;
    std::vector<VertexId> target;
    std::vector<double> weight;

    explicit Csr(const SpannerGraph& g) {
        const std::size_t n = g.vertex_count();
        offset.assign(n + 1, 0);
        for (const auto& e : g.edges())
            if (e.alive) {
                ++offset[e.u + 1];
                ++offset[e.v + 1];
            }
        for (std::size_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
        target.resize(offset[n]);
        weight.resize(offset[n]);
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (const auto& e : g.edges())
            if (e.alive) {
                target[fill[e.u]] = e.v;
                weight[fill[e.u]++] = e.weight;
                target[fill[e.v]] = e.u;
                weight[fill[e.v]++] = e.weight;
            }
    }

    void dijkstra(VertexId src, std::vector<double>& dist) const {
        dist.assign(offset.size() - 1, kInf);
        MinHeap heap;
        dist[src] = 0.0;
        heap.push({0.0, src});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) continue;
            for (std::size_t i = offset[u]; i < offset[u + 1]; ++i) {
                const double nd = d + weight[i];
                if (nd < dist[target[i]]) {
                    dist[target[i]] = nd;
                    heap.push({nd, target[i]});
                }
            }
        }
    }
};

void run_dijkstra(const SpannerGraph& g, VertexId src, std::vector<double>& dist,
                  std::vector<EdgeId>* parent, VertexId stop) {
    dist.assign(g.vertex_count(), kInf);
    if (parent) parent->assign(g.vertex_count(), static_cast<EdgeId>(-1));
    MinHeap heap;
    dist[src] = 0.0;
    heap.push({0.0, src});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        if (u == stop) return;
        for (EdgeId eid : g.incident(u)) {
            const Edge& e = g.edge(eid);
            if (!e.alive) continue;
            const VertexId w = e.u == u ? e.v : e.u;
            const double nd = d + e.weight;
            if (nd < dist[w]) {
                dist[w] = nd;
                if (parent) (*parent)[w] = eid;
                heap.push({nd, w});
            }
        }
    }
}

void record(StretchReport& rep, const SpannerGraph& g, VertexId u, VertexId v, double path) {
    const double direct = distance(g.vertex(u).point, g.vertex(v).point, g.metric());
    double s;
    if (direct == 0.0)
        s = std::isfinite(path) ? 1.0 : kInf;
    else
        s = path / direct;
    ++rep.pairs_checked;
    if (s > rep.max_stretch || (rep.pairs_checked == 1 && s >= rep.max_stretch)) {
        rep.max_stretch = s;
        rep.witness = {u, v, path, direct};
    }
}

void finish(StretchReport& rep) {
    rep.passed = rep.max_stretch <= rep.t * (1.0 + kRelTol);
}

}  // namespace

std::vector<double> single_source_distances(const SpannerGraph& g, VertexId src) {
    g.vertex(src);
    std::vector<double> dist;
    run_dijkstra(g, src, dist, nullptr, static_cast<VertexId>(-1));
    return dist;
}

double shortest_path_weight(const SpannerGraph& g, VertexId u, VertexId v) {
    g.vertex(u);
    g.vertex(v);
    if (u == v) return 0.0;
    std::vector<double> dist;
    run_dijkstra(g, u, dist, nullptr, v);
    return dist[v];
}

PathResult shortest_path(const SpannerGraph& g, VertexId u, VertexId v) {
    g.vertex(u);
    g.vertex(v);
    PathResult out;
    if (u == v) {
        out.weight = 0.0;
        out.vertices = {u};
        return out;
    }
    std::vector<double> dist;
    std::vector<EdgeId> parent;
    run_dijkstra(g, u, dist, &parent, v);
    out.weight = dist[v];
    if (!std::isfinite(out.weight)) return out;
    for (VertexId cur = v; cur != u;) {
        out.vertices.push_back(cur);
        const Edge& e = g.edge(parent[cur]);
        cur = e.u == cur ? e.v : e.u;
    }
    out.vertices.push_back(u);
    std::reverse(out.vertices.begin(), out.vertices.end());
    return out;
}

StretchReport verify_stretch(const SpannerGraph& g, double t) {
    if (t < 1.0) throw std::invalid_argument("verify_stretch: t < 1");
    StretchReport rep;
    rep.t = t;
    const auto inputs = g.input_vertices();
    if (inputs.size() >= 2) {
        const Csr csr(g);
        std::vector<double> dist;
        for (std::size_t i = 0; i + 1 < inputs.size(); ++i) {
            csr.dijkstra(inputs[i], dist);
            for (std::size_t j = i + 1; j < inputs.size(); ++j)
                record(rep, g, inputs[i], inputs[j], dist[inputs[j]]);
        }
    }
    finish(rep);
    return rep;
}

StretchReport verify_stretch(const SpannerGraph& g,
                             std::span<const std::pair<VertexId, VertexId>> pairs, double t) {
    if (t < 1.0) throw std::invalid_argument("verify_stretch: t < 1");
    StretchReport rep;
    rep.t = t;
    std::map<VertexId, std::vector<VertexId>> by_source;
    for (auto [u, v] : pairs) {
        g.vertex(u);
        g.vertex(v);
        if (g.vertex(u).kind != VertexKind::input || g.vertex(v).kind != VertexKind::input)
            throw std::invalid_argument("verify_stretch: pairs must join input vertices");
        by_source[u].push_back(v);
    }
    if (!by_source.empty()) {
        const Csr csr(g);
        std::vector<double> dist;
        for (const auto& [src, targets] : by_source) {
            csr.dijkstra(src, dist);
            for (VertexId v : targets) record(rep, g, src, v, dist[v]);
        }
    }
    finish(rep);
    return rep;
}

double mst_weight(std::span<const Point> points, Metric m) {
    const std::size_t n = points.size();
    if (n <= 1) return 0.0;
    if (points[0].size() == 1) {
        auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const Point& a, const Point& b) { return a[0] < b[0]; });
        return (*hi)[0] - (*lo)[0];
    }
    std::vector<double> best(n, kInf);
    std::vector<char> in(n, 0);
    best[0] = 0.0;
    double total = 0.0;
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!in[i] && (u == n || best[i] < best[u])) u = i;
        in[u] = 1;
        total += best[u];
        for (std::size_t i = 0; i < n; ++i)
            if (!in[i]) best[i] = std::min(best[i], distance(points[u], points[i], m));
    }
    return total;
}

double BoundedSearch::run(VertexId s, VertexId t, double bound) {
    settled_ = 0;
    if (s == t) return 0.0;
    const std::size_t n = g_.vertex_count();
    if (dist_.size() < n) {
        dist_.resize(n, kInf);
        heur_.resize(n, 0.0);
        stamp_.resize(n, 0);
    }
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    const Point& target = g_.vertex(t).point;
    const double limit = bound * (1.0 + kRelTol);
    const auto& verts = g_.vertices();
    const auto& edges = g_.edges();
    const Metric m = g_.metric();
    MinHeap heap;
    stamp_[s] = epoch_;
    dist_[s] = 0.0;
    heur_[s] = distance(verts[s].point, target, m);
    heap.push({heur_[s], s});
    while (!heap.empty()) {
        auto [f, u] = heap.top();
        heap.pop();
        const double du = dist_[u];
        if (f > du + heur_[u] * (1.0 + 1e-12) + 1e-15) continue;
        ++settled_;
        if (u == t) return du;
        for (EdgeId eid : g_.incident(u)) {
            const Edge& e = edges[eid];
            if (!e.alive) continue;
            const VertexId w = e.u == u ? e.v : e.u;
            const double nd = du + e.weight;
            const bool seen = stamp_[w] == epoch_;
            if (seen && nd >= dist_[w]) continue;
            const double h = seen ? heur_[w] : distance(verts[w].point, target, m);
            const double nf = nd + h;
            if (nf > limit) {
                if (!seen) {
                    stamp_[w] = epoch_;
                    dist_[w] = kInf;
                    heur_[w] = h;
                }
                continue;
            }
            stamp_[w] = epoch_;
            dist_[w] = nd;
            heur_[w] = h;
            heap.push({nf, w});
        }
    }
    return kInf;
}

std::vector<double> BoundedSearch::reach(VertexId s, const std::vector<VertexId>& targets, double limit) {
    settled_ = 0;
    const std::size_t n = g_.vertex_count();
    if (dist_.size() < n) {
        dist_.resize(n, kInf);
        heur_.resize(n, 0.0);
        stamp_.resize(n, 0);
    }
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    auto g_of = [&](VertexId v) { return stamp_[v] == epoch_ ? dist_[v] : kInf; };
    std::unordered_map<VertexId, std::size_t> pending;
    for (VertexId t : targets) ++pending[t];
    limit *= 1.0 + kRelTol;
    MinHeap heap;
    stamp_[s] = epoch_;
    dist_[s] = 0.0;
    heap.push({0.0, s});
    while (!heap.empty() && !pending.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (du > g_of(u)) continue;
        ++settled_;
        pending.erase(u);
        for (EdgeId eid : g_.incident(u)) {
            const Edge& e = g_.edge(eid);
            if (!e.alive) continue;
            const VertexId w = e.u == u ? e.v : e.u;
            const double nd = du + e.weight;
            if (nd > limit || nd >= g_of(w)) continue;
            stamp_[w] = epoch_;
            dist_[w] = nd;
            heap.push({nd, w});
        }
    }
    std::vector<double> out;
    out.reserve(targets.size());
    for (VertexId t : targets) out.push_back(g_of(t));
    return out;
}

}  // namespace spanlab
