/// Acceptance suite: one PASS/FAIL line per criterion, details on the lines that follow it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "spanlab/adversary1d.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/l1.hpp"
#include "spanlab/online.hpp"
#include "spanlab/oracle.hpp"
#include "spanlab/quadtree.hpp"
#include "spanlab/random.hpp"
#include "spanlab/slt.hpp"
#include "spanlab/spanner1d.hpp"
#include "spanlab/steiner.hpp"
#include "spanlab/steiner_adversary.hpp"

using namespace spanlab;

namespace {

constexpr double kTol = 1e-9;
const std::vector<double> kEps{0.5, 0.25, 1.0 / 16};

struct Outcome {
    bool pass = true;
    std::ostringstream log;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        log << "    " << (ok ? "ok   " : "FAIL ") << what << "\n";
    }
};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string eps_name(double eps) { return "eps=1/" + std::to_string(static_cast<int>(std::lround(1 / eps))); }

std::vector<Point> as_points(const std::vector<double>& xs) {
    std::vector<Point> out;
    for (double x : xs) out.push_back({x});
    return out;
}

std::vector<double> random_line(std::size_t n, std::uint64_t seed) {
    std::vector<double> out;
    for (const auto& p : uniform_points(n, 1, seed)) out.push_back(p[0]);
    return out;
}

/// Builds the algorithm over the points and certifies the final graph at the given stretch.
void certify(Outcome& o, AlgorithmKind kind, double eps, std::size_t dim, const std::vector<Point>& pts,
             double t, const std::string& suite) {
    auto alg = make_online(kind, eps, dim);
    for (const auto& p : pts) alg->insert(p);
    const auto rep = verify_stretch(alg->graph(), t);
    o.check(rep.passed, std::string(algorithm_name(kind)) + " " + suite + " " + eps_name(eps) + " n=" +
                            std::to_string(pts.size()) + ": max stretch " + num(rep.max_stretch) + " <= " + num(t));
}

struct SteinerAdversaryRun {
    std::vector<Point> points;
    std::vector<double> gains;
    std::vector<double> witness;
    std::vector<double> bounds;
    std::unique_ptr<OnlineSpanner> alg;
    std::string error;
};

/// Steiner adversary against the Steiner spanner of guaranteed stretch 1 + eps.
SteinerAdversaryRun steiner_adversary(double eps, std::size_t stages) {
    SteinerAdversaryRun run;
    run.alg = make_online_with_stretch(AlgorithmKind::steiner, eps, 2);
    SteinerAdversaryConfig cfg;
    cfg.eps = eps;
    SteinerAdversary adv(cfg);
    for (const auto& p : adv.initial()) {
        run.alg->insert(p);
        run.points.push_back(p);
    }
    try {
        for (std::size_t i = 2; i <= stages; ++i) {
            const auto plan = adv.plan(run.alg->graph());
            for (const auto& p : plan.batch) {
                run.alg->insert(p);
                run.points.push_back(p);
            }
            run.gains.push_back(adv.commit(run.alg->graph()));
            run.witness.push_back(adv.witness_weight());
            run.bounds.push_back(adv.witness_bound(i));
        }
    } catch (const std::exception& e) {
        run.error = e.what();
    }
    return run;
}

Outcome criterion1() {
    Outcome o;
    for (double eps : kEps) {
        certify(o, AlgorithmKind::line, eps, 1, as_points(random_line(10000, 1)), 1 + eps, "random-1d");
        for (std::size_t stages = 1; stages <= 3; ++stages)
            certify(o, AlgorithmKind::line, eps, 1, as_points(adversary_1d_stream(eps, stages)), 1 + eps,
                    "adversary-1d stages=" + std::to_string(stages));
        for (std::size_t dim : {2u, 3u}) {
            const auto pts = uniform_points(500, dim, 1);
            const std::string suite = "uniform-" + std::to_string(dim) + "d";
            certify(o, AlgorithmKind::quadtree, eps, dim, pts, 1 + eps, suite);
            certify(o, AlgorithmKind::steiner, eps, dim, pts, 1 + 3 * eps, suite);
        }
        auto run = steiner_adversary(eps, 3);
        const std::string suite = "steiner-adversary stages=" + std::to_string(run.gains.size() + 1);
        if (!run.error.empty()) o.log << "    note " << eps_name(eps) << ": adversary stopped early: " << run.error << "\n";
        const auto rep = verify_stretch(run.alg->graph(), 1 + eps);
        o.check(rep.passed, "steiner " + suite + " " + eps_name(eps) + " n=" + std::to_string(run.points.size()) +
                                ": max stretch " + num(rep.max_stretch) + " <= " + num(1 + eps));
        certify(o, AlgorithmKind::quadtree, eps, 2, run.points, 1 + eps, suite);
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    for (double eps : {0.5, 0.125}) {
        for (std::size_t j = 1; j <= 4; ++j) {
            const auto xs = adversary_1d_stream(eps, j);
            Spanner1D s(eps);
            for (double x : xs) s.insert(x);
            const double w = s.graph().total_weight();
            const double forced = adversary_1d_forced_weight(eps, j);
            o.check(w >= forced && opt_1d(xs) == 1.0, eps_name(eps) + " j=" + std::to_string(j) + ": weight " + num(w) +
                                                          " >= " + num(forced) + ", opt " + num(opt_1d(xs)));
        }
    }
    return o;
}

Outcome criterion3() {
    Outcome o;
    for (double eps : kEps) {
        auto bound = [&](std::size_t n) { return 64.0 / eps * std::log2(static_cast<double>(n)) / std::log2(1 / eps); };
        auto run = [&](const std::vector<double>& xs, const std::string& suite) {
            Spanner1D s(eps);
            for (double x : xs) s.insert(x);
            const double ratio = s.graph().total_weight() / opt_1d(xs);
            o.check(ratio <= bound(xs.size()), suite + " " + eps_name(eps) + " n=" + std::to_string(xs.size()) +
                                                   ": ratio " + num(ratio) + " <= " + num(bound(xs.size())));
        };
        for (std::size_t n : {1000u, 10000u, 100000u}) run(random_line(n, 2), "random");
        for (std::size_t stages = 1;; ++stages) {
            const auto xs = adversary_1d_stream(eps, stages);
            if (xs.size() > 100000) break;
            run(xs, "adversary stages=" + std::to_string(stages));
        }
    }
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::size_t bad_runs = 0, checks = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const double eps = kEps[seed % kEps.size()];
        Lcg rng(seed);
        Spanner1D s(eps);
        bool clean = true;
        for (int i = 0; i < 1000; ++i) {
            // A coarse lattice makes duplicates and endpoint ties likely.
            const double x = seed % 2 ? rng.uniform() : std::floor(rng.uniform() * 256) / 256;
            s.insert(x);
            ++checks;
            const auto v = check_structure(s);
            if (!v.empty()) {
                clean = false;
                o.log << "    seed " << seed << " step " << i << ": " << v.front().detail << "\n";
                break;
            }
        }
        if (!clean) ++bad_runs;
    }
    o.check(bad_runs == 0, "100 seeds x 1000 insertions, " + std::to_string(checks) + " structure checks, " +
                               std::to_string(bad_runs) + " runs with violations");
    return o;
}

Outcome criterion5() {
    Outcome o;
    const double eps = 0.25;
    for (std::size_t n : {125u, 250u, 500u}) {
        const auto pts = uniform_points(n, 2, 5);
        QuadtreeSpanner q({eps, 2, {}, 1.0, Metric::l2});
        for (const auto& p : pts) q.insert(p);
        const double ratio = q.graph().total_weight() / mst_weight(pts);
        const double bound = 16 * std::pow(eps, -3) * std::log2(static_cast<double>(n));
        o.check(ratio <= bound, "n=" + std::to_string(n) + ": alg/mst " + num(ratio) + " <= " + num(bound));
        std::size_t outside = 0, edges = 0;
        for (int l : q.levels()) {
            const double side = std::ldexp(q.config().base_scale, -l);
            const double lo = q.config().rule.c1 * side / eps, hi = q.config().rule.c2 * side / eps;
            for (EdgeId e : q.level_edges(l)) {
                ++edges;
                const double w = q.graph().edge(e).weight;
                if (w < lo || w > hi) ++outside;
            }
        }
        o.check(outside == 0, "n=" + std::to_string(n) + ": " + std::to_string(edges) + " level edges, " +
                                  std::to_string(outside) + " outside their annulus");
    }
    return o;
}

Outcome criterion6() {
    Outcome o;
    for (double eps : {0.25, 1.0 / 16}) {
        for (double dist : {4.0, 16.0}) {
            std::vector<Point> leaves;
            for (double x = -dist; x <= dist; x += 1.0) leaves.push_back({x, dist});
            for (SltKind kind : {SltKind::dyadic, SltKind::star}) {
                SltConfig cfg;
                cfg.kind = kind;
                const auto t = build_slt({0, 0}, leaves, eps, cfg);
                SpannerGraph g(2);
                for (std::size_t i = 0; i < t.node_count(); ++i) g.add_vertex(t.node(i));
                for (auto [a, b] : t.edges) g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
                const auto from_root = single_source_distances(g, 0);
                double worst = 1.0;
                for (std::size_t i = 0; i < leaves.size(); ++i)
                    worst = std::max(worst, from_root[1 + i] / distance({0, 0}, leaves[i]));
                const std::string name = std::string(kind == SltKind::dyadic ? "dyadic" : "star") + " " + eps_name(eps) +
                                         " dist=" + num(dist);
                o.check(worst <= (1 + eps) * (1 + kTol), name + ": root stretch " + num(worst));
                if (kind == SltKind::dyadic)
                    o.check(g.total_weight() <= 10 * dist, name + ": weight " + num(g.total_weight()) + " <= " + num(10 * dist));
                else
                    o.log << "    info " << name << ": weight " << num(g.total_weight()) << "\n";
            }
        }
    }
    return o;
}

Outcome criterion7() {
    Outcome o;
    // C_b: the largest ratio of the exact per-bucket bound (grid closed form plus trees of weight
    // 10 root_dist) to eps^(-3/2) over the tested eps values.
    double cb = 0.0;
    for (double eps : {0.5, 0.25, 1.0 / 16}) {
        SteinerConfig cfg;
        cfg.eps = eps;
        SteinerSpanner probe(cfg);
        cb = std::max(cb, probe.geometry().backbone_bound(10.0) * std::pow(eps, 1.5));
    }
    o.log << "    C_b = " << num(cb) << "\n";
    for (double eps : {0.5, 0.25, 1.0 / 16}) {
        SteinerConfig cfg;
        cfg.eps = eps;
        cfg.mode = BackboneMode::eager;
        SteinerSpanner s(cfg);
        for (const auto& p : uniform_points(40, 2, 7)) s.insert(p);
        double worst_backbone = 0.0, worst_connector = 0.0;
        std::size_t built = 0;
        for (const auto& [key, st] : s.buckets()) {
            const double unit = s.unit(key.level);
            if (st.built) {
                ++built;
                worst_backbone = std::max(worst_backbone, st.backbone_weight / (std::pow(eps, -1.5) * unit));
            }
            worst_connector = std::max(worst_connector, st.max_connector / (std::sqrt(2.0) * unit));
        }
        o.check(built > 0 && worst_backbone <= cb, eps_name(eps) + ": " + std::to_string(built) +
                                                       " built buckets, max backbone/(eps^-1.5 scale) " +
                                                       num(worst_backbone) + " <= " + num(cb));
        // Each point links to the 2^d corners of its cell, so every connector within one diagonal
        // keeps a point's connectors within 2^d diagonals.
        o.check(worst_connector <= 1 + kTol, eps_name(eps) + ": longest connector / cell diagonal " + num(worst_connector));
    }
    return o;
}

Outcome criterion8() {
    Outcome o;
    const double eps = 0.25;
    auto run = steiner_adversary(eps, 3);
    o.check(run.error.empty(), "3 stages completed" + (run.error.empty() ? std::string() : ": " + run.error));
    for (std::size_t i = 0; i < run.gains.size(); ++i) {
        const std::string stage = "stage " + std::to_string(i + 2);
        o.check(run.gains[i] >= 0.5 - 1e-3, stage + ": region gain " + num(run.gains[i]) + " >= 0.499");
        o.check(run.witness[i] <= run.bounds[i] * (1 + kTol),
                stage + ": witness " + num(run.witness[i]) + " <= " + num(run.bounds[i]));
    }
    return o;
}

double network_stretch(const L1Construction& c) {
    const auto g = manhattan_network(c);
    return verify_stretch(g, 1.0).max_stretch;
}

Outcome criterion9() {
    Outcome o;
    for (double eps : {0.25, 1.0 / 16}) {
        const auto c = build_l1_2d(eps);
        const double two_k = std::ldexp(1.0, c.k);
        const std::string name = eps_name(eps) + " k=" + std::to_string(c.k);
        o.check(c.s1.size() == static_cast<std::size_t>(two_k), name + ": |S1| = " + std::to_string(c.s1.size()));
        o.check(c.cross_distance() == 2 * (two_k - 1), name + ": cross distance " + num(c.cross_distance()));
        const auto bip = verify_bipartite_necessity(c);
        o.check(bip.necessary, name + ": bipartite necessity (min detour " + num(bip.min_detour) + " > " +
                                   num(bip.max_allowed) + ")");
        const double stretch = network_stretch(c);
        o.check(stretch == 1.0, name + ": network stretch " + num(stretch));
        const double w = manhattan_network(c).total_weight();
        o.check(w <= 8 * c.k * two_k, name + ": network weight " + num(w) + " <= " + num(8 * c.k * two_k));
        const double ratio = forced_bipartite_weight(c) / w;
        const double need = std::pow(eps, -2) / (32 * std::log2(1 / eps));
        o.check(ratio >= need, name + ": forced/network " + num(ratio) + " >= " + num(need));
    }
    const std::size_t dim = 3;
    std::vector<double> r;
    for (double eps : {0.25, 0.125}) {
        const auto c = build_l1_highdim(eps, dim);
        const std::string name = "d=3 k=" + std::to_string(c.k);
        const double stretch = network_stretch(c);
        o.check(stretch == 1.0, name + ": T1 u T2 Manhattan, stretch " + num(stretch));
        r.push_back(tree_weight(c) / std::ldexp(1.0, c.k * static_cast<int>(dim - 1)));
        o.log << "    info " << name << ": |T1| = " << num(tree_weight(c)) << "\n";
    }
    const double a = std::sqrt(r[0] * r[1]);
    for (std::size_t i = 0; i < r.size(); ++i)
        o.check(r[i] / a >= 0.5 && r[i] / a <= 2.0,
                "d=3 k=" + std::to_string(2 + i) + ": |T1|/2^(k(d-1)) = " + num(r[i]) + ", fitted a = " + num(a));
    return o;
}

Outcome criterion10() {
    Outcome o;
    const double eps = 1.0 / 16;
    std::size_t paths = 0, violations = 0;
    double worst = kInf;
    auto sample = [&](const OnlineSpanner& alg, const std::vector<Point>& pts, std::size_t want, std::uint64_t seed) {
        const auto& g = alg.graph();
        Lcg rng(seed);
        std::size_t got = 0;
        while (got < want) {
            const auto i = static_cast<std::size_t>(rng.uniform() * pts.size());
            const auto j = static_cast<std::size_t>(rng.uniform() * pts.size());
            if (i == j) continue;
            const VertexId u = g.input_vertices()[i], v = g.input_vertices()[j];
            const auto path = shortest_path(g, u, v);
            const double direct = distance(pts[i], pts[j]);
            if (!(path.weight <= (1 + eps) * direct * (1 + kTol))) continue;
            std::vector<Segment> segs;
            for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k)
                segs.push_back({g.vertex(path.vertices[k]).point, g.vertex(path.vertices[k + 1]).point});
            const double near = near_parallel_weight(segs, pts[i], pts[j], eps).weight;
            worst = std::min(worst, near / direct);
            if (near < 0.5 * direct) ++violations;
            ++got;
            ++paths;
        }
    };
    const auto pts = uniform_points(200, 2, 13);
    auto quad = make_online(AlgorithmKind::quadtree, eps, 2);
    for (const auto& p : pts) quad->insert(p);
    sample(*quad, pts, 100, 1);
    const auto few = uniform_points(60, 2, 14);
    auto st = make_online_with_stretch(AlgorithmKind::steiner, eps, 2);
    for (const auto& p : few) st->insert(p);
    sample(*st, few, 100, 2);
    o.check(violations == 0, std::to_string(paths) + " certified paths, " + std::to_string(violations) +
                                 " below half, min near-parallel fraction " + num(worst));
    return o;
}

Outcome criterion11() {
    Outcome o;
    const double h = std::sqrt(3.0) / 2;
    std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, h}};
    const auto three = exact_opt_small(tri, 1.5);
    auto four = tri;
    four.push_back({0.5, h / 3});
    const auto with_centre = exact_opt_small(four, 1.5);
    o.check(three.certified && with_centre.certified, "both optima certified");
    o.check(with_centre.weight < three.weight,
            "OPT drops from " + num(three.weight) + " to " + num(with_centre.weight) + " when the centre is added");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"stretch certification", criterion1},  {"1D lower bound realized", criterion2},
        {"1D upper bound", criterion3},         {"1D structure suite", criterion4},
        {"quadtree weight", criterion5},        {"shallow-light tree contract", criterion6},
        {"Steiner backbone accounting", criterion7}, {"Steiner adversary stage gain", criterion8},
        {"L1 constructions", criterion9},       {"near-parallel diagnostic", criterion10},
        {"non-monotone optimum", criterion11}};
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.pass;
        std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << " ("
                  << num(secs) << " s)\n"
                  << o.log.str() << std::flush;
    }
    return all ? 0 : 1;
}
