#include "spanlab/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>

namespace spanlab {

namespace {

using Coords = std::vector<std::int64_t>;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t round_to(double x, std::int64_t s) {
    return s * static_cast<std::int64_t>(std::floor(x / static_cast<double>(s) + 0.5));
}

/// One tree of an eager backbone: face position, side (+1 roots beyond the face), square centre, lane.
struct TreeSpec {
    std::int64_t face;
    int side;
    Coords centre;
    Coords lane;
};

void for_each_cross(std::size_t axes, std::int64_t lo, std::int64_t hi, std::int64_t step,
                    const std::function<void(const Coords&)>& fn) {
    if (axes == 0) {
        fn({});
        return;
    }
    Coords c(axes, lo);
    for (;;) {
        fn(c);
        std::size_t i = 0;
        while (i < axes && c[i] + step > hi) c[i++] = lo;
        if (i == axes) return;
        c[i] += step;
    }
}

/// Trees of the backbone over the rectangle with along range [a0, a1] and cross range [c0, c1].
std::vector<TreeSpec> backbone_trees(const BucketGeometry& g, std::int64_t a0, std::int64_t a1,
                                     const Coords& c0, std::int64_t cross_len) {
    std::vector<TreeSpec> out;
    const std::size_t axes = g.dim - 1;
    const std::int64_t s = g.s;
    for (std::int64_t q = floor_div(a0, s); (q + 1) * s <= a1; ++q) {
        if (q * s < a0) continue;
        for_each_cross(axes, 0, cross_len / s, 1, [&](const Coords& idx) {
            Coords centre(axes);
            for (std::size_t k = 0; k < axes; ++k) {
                centre[k] = c0[k] + idx[k] * s;
                if (centre[k] - s / 2 < c0[k] || centre[k] + s / 2 > c0[k] + cross_len) return;
            }
            for (int side : {+1, -1}) {
                const std::int64_t face = side > 0 ? (q + 1) * s : q * s;
                const std::int64_t root = face + side * g.root_dist;
                if (root < a0 || root > a1) continue;
                for_each_cross(axes, 0, cross_len / s, 1, [&](const Coords& lidx) {
                    Coords lane(axes);
                    for (std::size_t k = 0; k < axes; ++k) {
                        lane[k] = c0[k] + lidx[k] * s;
                        if (std::llabs(lane[k] - centre[k]) > g.lane_reach) return;
                    }
                    out.push_back({face, side, centre, lane});
                });
            }
        });
    }
    return out;
}

}  // namespace

BucketGeometry BucketGeometry::compute(double eps, std::size_t dim, double rho) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("bucket geometry: need 0 < eps < 1");
    if (dim < 2) throw std::invalid_argument("bucket geometry: d must be >= 2");
    BucketGeometry g;
    g.eps = eps;
    g.dim = dim;
    g.rho = rho;
    g.s = 2 * static_cast<std::int64_t>(std::ceil(std::pow(eps, -0.5) / 2.0 - 1e-12));
    g.root_dist = static_cast<std::int64_t>(std::ceil(1.0 / eps - 1e-12));
    const double need = static_cast<double>(2 * g.root_dist + 2 * g.s + 2) / std::cos(rho);
    g.lambda = g.s * static_cast<std::int64_t>(std::ceil(need / static_cast<double>(g.s)));
    g.tile_along = 2 * g.lambda;
    const double lateral = static_cast<double>(g.lambda) * std::sin(rho);
    g.tile_cross = 2 * g.s * std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(lateral / static_cast<double>(g.s))));
    g.lane_reach = g.s * static_cast<std::int64_t>(std::ceil((lateral + static_cast<double>(g.s)) / static_cast<double>(g.s)));
    return g;
}

double BucketGeometry::grid_closed_form() const {
    const double along = static_cast<double>(tile_along + 2 * lambda);
    const double cross = static_cast<double>(2 * tile_cross);
    const double m = static_cast<double>(dim - 1);
    const double rows = std::pow(cross + 1.0, m);
    const double cross_lines = m * (along + 1.0) * std::pow(cross + 1.0, m - 1.0) * cross;
    return rows * along + cross_lines;
}

std::size_t BucketGeometry::slt_count() const {
    return backbone_trees(*this, -lambda, tile_along + lambda, Coords(dim - 1, -tile_cross / 2), 2 * tile_cross).size();
}

double BucketGeometry::backbone_bound(double kappa) const {
    return grid_closed_form() + static_cast<double>(slt_count()) * kappa * static_cast<double>(root_dist);
}

int length_class(double length, const BucketGeometry& geom, double base_scale) {
    return static_cast<int>(std::floor(std::log2(length / (static_cast<double>(geom.lambda) * base_scale))));
}

namespace {

struct FrameSet {
    std::vector<std::vector<Point>> frames;

    Point to_frame(std::size_t dir, const Point& x, double unit) const {
        const auto& f = frames[dir];
        Point y(f.size());
        for (std::size_t k = 0; k < f.size(); ++k) y[k] = dot(x, f[k]) / unit;
        return y;
    }
};

}  // namespace

std::vector<BucketKey> assign_buckets(const Point& a, const Point& b, const DirectionCover& cover,
                                      const BucketGeometry& geom, double base_scale) {
    const double len = distance(a, b);
    if (!(len > 0.0)) throw std::invalid_argument("assign_buckets: degenerate edge");
    const int j = length_class(len, geom, base_scale);
    const double unit = std::ldexp(base_scale, j);
    const Point ab = sub(b, a);
    const std::size_t nearest = nearest_direction(cover, ab);
    std::vector<std::size_t> dirs{nearest};
    for (std::size_t i = 0; i < cover.directions.size(); ++i)
        if (i != nearest && undirected_angle(ab, cover.directions[i]) <= cover.covering_radius * (1.0 + kRelTol))
            dirs.push_back(i);
    const std::size_t axes = geom.dim - 1;
    std::vector<BucketKey> keys;
    for (std::size_t dir : dirs) {
        const auto frame = orthonormal_frame(cover.directions[dir]);
        Point ya(geom.dim), yb(geom.dim);
        for (std::size_t k = 0; k < geom.dim; ++k) {
            ya[k] = dot(a, frame[k]) / unit;
            yb[k] = dot(b, frame[k]) / unit;
        }
        Coords home(geom.dim);
        home[0] = static_cast<std::int64_t>(std::floor((ya[0] + yb[0]) / 2.0 / static_cast<double>(geom.tile_along)));
        for (std::size_t k = 1; k < geom.dim; ++k)
            home[k] = static_cast<std::int64_t>(std::floor((ya[k] + yb[k]) / 2.0 / static_cast<double>(geom.tile_cross)));
        auto contains = [&](const Coords& r) {
            const double lo = static_cast<double>(r[0] * geom.tile_along - geom.lambda);
            const double hi = static_cast<double>(r[0] * geom.tile_along + geom.tile_along + geom.lambda);
            if (std::min(ya[0], yb[0]) < lo || std::max(ya[0], yb[0]) >= hi) return false;
            for (std::size_t k = 1; k < geom.dim; ++k) {
                const double clo = static_cast<double>(r[k] * geom.tile_cross - geom.tile_cross / 2);
                const double chi = static_cast<double>(r[k] * geom.tile_cross + 3 * geom.tile_cross / 2);
                if (std::min(ya[k], yb[k]) < clo || std::max(ya[k], yb[k]) >= chi) return false;
            }
            return true;
        };
        std::vector<Coords> found;
        if (contains(home)) found.push_back(home);
        Coords delta(geom.dim, -1);
        for (;;) {
            Coords r(geom.dim);
            bool zero = true;
            for (std::size_t k = 0; k < geom.dim; ++k) {
                r[k] = home[k] + delta[k];
                zero = zero && delta[k] == 0;
            }
            if (!zero && contains(r)) found.push_back(r);
            std::size_t i = 0;
            while (i < geom.dim && delta[i] == 1) delta[i++] = -1;
            if (i == geom.dim) break;
            ++delta[i];
        }
        for (auto& r : found) keys.push_back({j, dir, std::move(r)});
    }
    (void)axes;
    if (keys.empty() || keys.front().direction != nearest)
        throw std::logic_error("assign_buckets: no rectangle contains the edge");
    return keys;
}

/// Single-source distances under edge insertions, settled lazily up to a growing limit.
class GrowingTree {
public:
    void begin(const SpannerGraph& g, VertexId src) {
        for (VertexId t : touched_) dist_[t] = kInf;
        touched_.clear();
        heap_ = {};
        consumed_ = 0;
        grow(g);
        set(src, 0.0);
        heap_.push({0.0, src});
    }

    /// Folds in edges[consumed..] and settles every distance up to limit.
    void update(const SpannerGraph& g, const std::vector<EdgeId>& edges, double limit) {
        grow(g);
        for (; consumed_ < edges.size(); ++consumed_) {
            const Edge& e = g.edge(edges[consumed_]);
            relax(e.u, e.v, e.weight);
            relax(e.v, e.u, e.weight);
        }
        const double cap = limit * (1.0 + kRelTol);
        const auto& all = g.edges();
        while (!heap_.empty() && heap_.top().first <= cap) {
            auto [du, u] = heap_.top();
            heap_.pop();
            if (du > dist_[u]) continue;
            for (EdgeId eid : g.incident(u)) {
                const Edge& e = all[eid];
                if (!e.alive) continue;
                relax(u, e.u == u ? e.v : e.u, e.weight);
            }
        }
    }

    double at(VertexId v) const { return v < dist_.size() ? dist_[v] : kInf; }

private:
    using Item = std::pair<double, VertexId>;

    void grow(const SpannerGraph& g) {
        if (dist_.size() < g.vertex_count()) dist_.resize(g.vertex_count(), kInf);
    }
    void set(VertexId v, double d) {
        if (dist_[v] == kInf) touched_.push_back(v);
        dist_[v] = d;
    }
    void relax(VertexId from, VertexId to, double w) {
        const double nd = dist_[from] + w;
        if (nd >= dist_[to]) return;
        set(to, nd);
        heap_.push({nd, to});
    }

    std::vector<double> dist_;
    std::vector<VertexId> touched_;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap_;
    std::size_t consumed_ = 0;
};

struct SteinerSpanner::Impl {
    struct Node {
        VertexId v;
        std::optional<EdgeId> next;  // edge to the following node on the line, when covered
    };
    // Lines and lattice points are keyed by exact positions c * 2^j, so the lattices of
    // different length classes share vertices and lines.
    using Exact = std::vector<double>;
    struct Line {
        std::map<double, Node> nodes;
    };
    struct TreeShape {
        std::vector<Point> hubs;  // frame coordinates relative to (face, centre)
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        std::size_t repairs = 0;
    };

    SteinerSpanner& self;
    FrameSet frames;
    std::map<Exact, Line> lines;
    std::map<Exact, VertexId> lattice;
    std::map<Point, VertexId> by_coords;
    std::map<Coords, TreeShape> shapes;
    std::set<Coords> trees_built;
    std::vector<VertexId> g1_to_g2;
    BoundedSearch search;
    GrowingTree tree_from;
    std::vector<EdgeId>* fresh = nullptr;
    BucketStats* current = nullptr;

    explicit Impl(SteinerSpanner& s) : self(s), search(s.g2_) {}

    static double exact(std::int64_t c, int j) { return std::ldexp(static_cast<double>(c), j); }

    static Exact line_key(int j, std::size_t dir, std::size_t axis, const Coords& c) {
        Exact key{static_cast<double>(dir), static_cast<double>(axis)};
        for (std::size_t k = 0; k < c.size(); ++k)
            if (k != axis) key.push_back(exact(c[k], j));
        return key;
    }

    void record(EdgeId e, bool connector) {
        if (fresh) fresh->push_back(e);
        if (!current) return;
        const double w = self.g2_.edge(e).weight;
        if (connector) {
            current->connector_weight += w;
            current->max_connector = std::max(current->max_connector, w);
        } else {
            current->backbone_weight += w;
        }
    }

    std::optional<EdgeId> link(VertexId u, VertexId v, bool connector) {
        if (u == v) return std::nullopt;
        if (auto e = self.g2_.find_edge(u, v)) return e;
        const EdgeId e = *self.g2_.add_edge(u, v);
        record(e, connector);
        return e;
    }

    VertexId steiner_vertex(const Point& p) {
        if (auto it = by_coords.find(p); it != by_coords.end()) return it->second;
        const VertexId v = self.g2_.add_vertex(p, VertexKind::steiner);
        by_coords.emplace(p, v);
        return v;
    }

    void place_on_line(Line& line, double t, VertexId v) {
        auto [it, inserted] = line.nodes.try_emplace(t, Node{v, std::nullopt});
        if (!inserted) return;
        if (it == line.nodes.begin()) return;
        auto prev = std::prev(it);
        if (!prev->second.next) return;
        const EdgeId e = *prev->second.next;
        if (!self.g2_.edge(e).alive) {
            prev->second.next.reset();
            return;
        }
        auto next = std::next(it);
        const VertexId a = prev->second.v;
        const VertexId b = next->second.v;
        if (v == a || v == b || self.g2_.find_edge(a, v) || self.g2_.find_edge(v, b)) return;
        const Edge old = self.g2_.edge(e);
        auto [first, second] = self.g2_.subdivide(e, v);
        if (fresh) {
            fresh->push_back(first);
            fresh->push_back(second);
        }
        const bool forward = old.u == a;
        prev->second.next = forward ? first : second;
        it->second.next = forward ? second : first;
    }

    VertexId lattice_vertex(int j, std::size_t dir, const Coords& c) {
        Exact key{static_cast<double>(dir)};
        for (auto x : c) key.push_back(exact(x, j));
        if (auto it = lattice.find(key); it != lattice.end()) return it->second;
        const VertexId v = steiner_vertex(self.lattice_point(j, dir, c));
        lattice.emplace(std::move(key), v);
        for (std::size_t axis = 0; axis < c.size(); ++axis)
            if (auto it = lines.find(line_key(j, dir, axis, c)); it != lines.end())
                place_on_line(it->second, exact(c[axis], j), v);
        return v;
    }

    Line& line_at(int j, std::size_t dir, std::size_t axis, const Coords& c) {
        return lines[line_key(j, dir, axis, c)];
    }

    VertexId node(int j, std::size_t dir, std::size_t axis, const Coords& c) {
        const VertexId v = lattice_vertex(j, dir, c);
        place_on_line(line_at(j, dir, axis, c), exact(c[axis], j), v);
        return v;
    }

    /// Edges between consecutive nodes of the line through c along axis, over [t0, t1].
    void cover(int j, std::size_t dir, std::size_t axis, Coords c, std::int64_t t0, std::int64_t t1) {
        if (t0 > t1) std::swap(t0, t1);
        c[axis] = t0;
        node(j, dir, axis, c);
        c[axis] = t1;
        node(j, dir, axis, c);
        Line& line = line_at(j, dir, axis, c);
        auto it = line.nodes.find(exact(t0, j));
        const double end = exact(t1, j);
        while (it->first < end) {
            auto nx = std::next(it);
            if (!it->second.next) it->second.next = link(it->second.v, nx->second.v, false);
            it = nx;
        }
    }

    const TreeShape& shape(const Coords& rel_root, std::size_t leaves_axes) {
        auto it = shapes.find(rel_root);
        if (it != shapes.end()) return it->second;
        const auto& g = self.geom_;
        Point root(rel_root.begin(), rel_root.end());
        std::vector<Point> leaves;
        for_each_cross(leaves_axes, -g.s / 2, g.s / 2, 1, [&](const Coords& d) {
            Point p{0.0};
            for (auto x : d) p.push_back(static_cast<double>(x));
            leaves.push_back(p);
        });
        const SltTree t = build_slt(root, leaves, self.config_.slt_eps_fraction * self.config_.eps, self.config_.slt);
        TreeShape sh{t.hubs, t.edges, t.repairs};
        return shapes.emplace(rel_root, std::move(sh)).first->second;
    }

    /// Tree from the face at `face` (square centred at `centre`) to its root at face + side * D_r on `lane`.
    void tree(int j, std::size_t dir, std::int64_t face, int side, const Coords& centre, const Coords& lane) {
        Coords key{j, static_cast<std::int64_t>(dir), face, side};
        key.insert(key.end(), centre.begin(), centre.end());
        key.insert(key.end(), lane.begin(), lane.end());
        if (!trees_built.insert(key).second) return;
        const auto& g = self.geom_;
        const std::size_t axes = g.dim - 1;
        Coords rel{side * g.root_dist};
        for (std::size_t k = 0; k < axes; ++k) rel.push_back(lane[k] - centre[k]);
        const TreeShape& sh = shape(rel, axes);
        ++self.stats_.trees;
        self.stats_.tree_repairs += sh.repairs;
        // Node numbering follows SltTree: root, leaves, hubs.
        std::vector<Coords> lattice_of;
        std::vector<VertexId> ids;
        Coords rc{face + side * g.root_dist};
        rc.insert(rc.end(), lane.begin(), lane.end());
        lattice_of.push_back(rc);
        ids.push_back(node(j, dir, 0, rc));
        for_each_cross(axes, -g.s / 2, g.s / 2, 1, [&](const Coords& d) {
            Coords lc{face};
            for (std::size_t k = 0; k < axes; ++k) lc.push_back(centre[k] + d[k]);
            lattice_of.push_back(lc);
            ids.push_back(node(j, dir, 0, lc));
        });
        const double u = self.unit(j);
        const auto& fr = frames.frames[dir];
        for (const auto& h : sh.hubs) {
            Point w(g.dim, 0.0);
            for (std::size_t k = 0; k < g.dim; ++k) {
                const double off = k == 0 ? static_cast<double>(face) : static_cast<double>(centre[k - 1]);
                w = add(w, scale(fr[k], (h[k] + off) * u));
            }
            lattice_of.push_back({});
            ids.push_back(steiner_vertex(w));
        }
        for (auto [a, b] : sh.edges) {
            const Coords& ca = lattice_of[a];
            const Coords& cb = lattice_of[b];
            if (!ca.empty() && !cb.empty()) {
                std::size_t diff = 0, axis = 0;
                for (std::size_t k = 0; k < ca.size(); ++k)
                    if (ca[k] != cb[k]) {
                        ++diff;
                        axis = k;
                    }
                if (diff == 1) {
                    cover(j, dir, axis, ca, ca[axis], cb[axis]);
                    continue;
                }
            }
            link(ids[a], ids[b], false);
        }
    }

    /// Corners of the unit cell holding frame point y.
    static std::vector<Coords> corners(const Point& y) {
        const std::size_t d = y.size();
        std::vector<Coords> out;
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            Coords c(d);
            for (std::size_t k = 0; k < d; ++k)
                c[k] = static_cast<std::int64_t>(std::floor(y[k])) + ((mask >> k) & 1);
            out.push_back(c);
        }
        return out;
    }

    void connectors(VertexId p, int j, std::size_t dir, const std::vector<Coords>& cs) {
        for (const auto& c : cs) link(p, lattice_vertex(j, dir, c), true);
    }

    /// Grid rows, trees and lane carrying the edge cd in its primary bucket.
    void route(VertexId c, VertexId d, int j, std::size_t dir) {
        const auto& g = self.geom_;
        const double u = self.unit(j);
        Point yc = frames.to_frame(dir, self.g2_.vertex(c).point, u);
        Point yd = frames.to_frame(dir, self.g2_.vertex(d).point, u);
        if (yc[0] > yd[0]) {
            std::swap(yc, yd);
            std::swap(c, d);
        }
        const auto cc = corners(yc);
        const auto cd = corners(yd);
        connectors(c, j, dir, cc);
        connectors(d, j, dir, cd);
        const std::size_t axes = g.dim - 1;
        Coords lane(axes);
        for (std::size_t k = 0; k < axes; ++k) lane[k] = round_to((yc[k + 1] + yd[k + 1]) / 2.0, g.s);
        const std::int64_t fc = (floor_div(cc.front()[0], g.s) + 1) * g.s;
        const std::int64_t nd = floor_div(cd.front()[0], g.s) * g.s;
        auto serve_rows = [&](const std::vector<Coords>& cs, std::int64_t face, int side) {
            std::set<Coords> crosses;
            for (const auto& c0 : cs) crosses.insert(Coords(c0.begin() + 1, c0.end()));
            for (const auto& x : crosses) {
                Coords row{cs.front()[0]};
                row.insert(row.end(), x.begin(), x.end());
                cover(j, dir, 0, row, side > 0 ? cs.front()[0] : cs.front()[0] + 1, face);
                Coords centre(axes);
                for (std::size_t k = 0; k < axes; ++k) centre[k] = round_to(static_cast<double>(x[k]), g.s);
                tree(j, dir, face, side, centre, lane);
            }
        };
        serve_rows(cc, fc, +1);
        serve_rows(cd, nd, -1);
        Coords l0{fc + g.root_dist};
        l0.insert(l0.end(), lane.begin(), lane.end());
        cover(j, dir, 0, l0, fc + g.root_dist, nd - g.root_dist);
    }

    void eager_backbone(const BucketKey& key) {
        const auto& g = self.geom_;
        const int j = key.level;
        const std::size_t dir = key.direction;
        const std::size_t axes = g.dim - 1;
        const std::int64_t a0 = key.rect[0] * g.tile_along - g.lambda;
        const std::int64_t a1 = key.rect[0] * g.tile_along + g.tile_along + g.lambda;
        Coords c0(axes);
        for (std::size_t k = 0; k < axes; ++k) c0[k] = key.rect[k + 1] * g.tile_cross - g.tile_cross / 2;
        const std::int64_t cl = 2 * g.tile_cross;
        // Rows along the direction.
        for_each_cross(axes, 0, cl, 1, [&](const Coords& idx) {
            Coords c{a0};
            for (std::size_t k = 0; k < axes; ++k) c.push_back(c0[k] + idx[k]);
            cover(j, dir, 0, c, a0, a1);
        });
        // Cross lines at every unit position.
        for (std::size_t axis = 1; axis <= axes; ++axis)
            for (std::int64_t t = a0; t <= a1; ++t)
                for_each_cross(axes, 0, cl, 1, [&](const Coords& idx) {
                    if (idx[axis - 1] != 0) return;
                    Coords c{t};
                    for (std::size_t k = 0; k < axes; ++k) c.push_back(c0[k] + idx[k]);
                    cover(j, dir, axis, c, c0[axis - 1], c0[axis - 1] + cl);
                });
        for (const auto& t : backbone_trees(g, a0, a1, c0, cl)) tree(j, dir, t.face, t.side, t.centre, t.lane);
    }
};

SteinerSpanner::SteinerSpanner(const SteinerConfig& config)
    : config_(config),
      g1_(QuadtreeConfig{config.eps, config.dim, config.rule, config.base_scale, Metric::l2}),
      g2_(config.dim, Metric::l2),
      cover_(build_direction_cover(config.dim, config.eps / 4.0)),
      geom_(BucketGeometry::compute(config.eps, config.dim, cover_.covering_radius)) {
    if (!(config.slt_eps_fraction > 0.0 && config.slt_eps_fraction <= 1.0))
        throw std::invalid_argument("steiner: slt_eps_fraction must be in (0, 1]");
    impl_ = std::make_unique<Impl>(*this);
    for (const auto& d : cover_.directions) impl_->frames.frames.push_back(orthonormal_frame(d));
}

SteinerSpanner::~SteinerSpanner() = default;
SteinerSpanner::SteinerSpanner(SteinerSpanner&&) noexcept = default;

double SteinerSpanner::unit(int level) const { return std::ldexp(config_.base_scale, level); }

Point SteinerSpanner::lattice_point(int level, std::size_t direction, const std::vector<std::int64_t>& c) const {
    const auto& fr = impl_->frames.frames.at(direction);
    const double u = unit(level);
    Point p(config_.dim, 0.0);
    for (std::size_t k = 0; k < config_.dim; ++k) p = add(p, scale(fr[k], static_cast<double>(c[k]) * u));
    return p;
}

std::vector<EdgeId> SteinerSpanner::ensure_backbone(const BucketKey& key) {
    std::vector<EdgeId> out;
    BucketStats& st = buckets_[key];
    if (st.built) return out;
    st.built = true;
    impl_->fresh = &out;
    impl_->current = &st;
    impl_->eager_backbone(key);
    impl_->fresh = nullptr;
    impl_->current = nullptr;
    return out;
}

std::vector<EdgeId> SteinerSpanner::insert(const Point& p) {
    if (p.size() != config_.dim) throw std::invalid_argument("steiner: dimension mismatch");
    std::vector<EdgeId> out;
    const auto g1_edges = g1_.insert(p);
    const VertexId v = g2_.add_vertex(p, VertexKind::input);
    inputs_.push_back(v);
    impl_->g1_to_g2.push_back(v);
    impl_->by_coords.try_emplace(p, v);
    impl_->fresh = &out;
    // Edges at the new point read distances from an insertion-only shortest-path tree rooted
    // at it, updated from the G2 edges created so far; other edges use a bounded A* search.
    const VertexId v1 = static_cast<VertexId>(g1_.graph().vertex_count() - 1);
    std::vector<EdgeId> order(g1_edges.begin(), g1_edges.end());
    std::stable_sort(order.begin(), order.end(), [&](EdgeId x, EdgeId y) {
        return g1_.graph().edge(x).weight < g1_.graph().edge(y).weight;
    });
    impl_->tree_from.begin(g2_, v);
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
        const Edge& e = g1_.graph().edge(order[idx]);
        const VertexId c = impl_->g1_to_g2.at(e.u), d = impl_->g1_to_g2.at(e.v);
        ++stats_.primary_edges;
        if (e.weight == 0.0) {
            ++stats_.zero_edges;
            impl_->link(c, d, false);
            continue;
        }
        const Point& pc = g2_.vertex(c).point;
        const Point& pd = g2_.vertex(d).point;
        const auto keys = assign_buckets(pc, pd, cover_, geom_, config_.base_scale);
        BucketStats& st = buckets_[keys.front()];
        ++st.edges;
        const double bound = (1.0 + config_.eps) * e.weight;
        if (config_.skip_served) {
            bool served;
            const bool at_new = e.u == v1 || e.v == v1;
            if (at_new) {
                impl_->tree_from.update(g2_, out, bound);
                served = impl_->tree_from.at(c == v ? d : c) <= bound * (1.0 + kRelTol);
            } else {
                served = impl_->search.run(c, d, bound) < kInf;
            }
            if (served) {
                ++st.served_existing;
                ++stats_.served_existing;
                continue;
            }
        }
        if (config_.mode == BackboneMode::eager && !st.built) {
            st.built = true;
            impl_->current = &st;
            impl_->eager_backbone(keys.front());
        }
        impl_->current = &st;
        impl_->route(c, d, keys.front().level, keys.front().direction);
        impl_->current = nullptr;
        ++stats_.routed;
        if (impl_->search.run(c, d, bound) == kInf) {
            ++st.fallbacks;
            ++stats_.fallbacks;
            impl_->link(c, d, false);
        }
    }
    impl_->fresh = nullptr;
    return out;
}

PathResult SteinerSpanner::query_path(std::size_t i, std::size_t j) const {
    return shortest_path(g2_, inputs_.at(i), inputs_.at(j));
}

}  // namespace spanlab
