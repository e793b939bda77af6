#include "spanlab/online.hpp"

#include <ostream>
#include <stdexcept>

#include "spanlab/io.hpp"

#include "spanlab/quadtree.hpp"
#include "spanlab/spanner1d.hpp"
#include "spanlab/steiner.hpp"

namespace spanlab {

namespace {

class LineAdapter final : public OnlineSpanner {
public:
    explicit LineAdapter(double eps) : OnlineSpanner(eps), impl_(eps) {}
    void insert(const Point& p) override {
        if (p.size() != 1) throw std::invalid_argument("line spanner: points must be 1D");
        impl_.insert(p[0]);
    }
    const SpannerGraph& graph() const override { return impl_.graph(); }
    double stretch_bound() const override { return 1.0 + eps_; }
    AlgorithmKind kind() const override { return AlgorithmKind::line; }
    void write_details(std::ostream& out) const override {
        out << "left,right,step\n";
        for (const auto& iv : impl_.intervals())
            out << format_double(iv.left) << "," << format_double(iv.right) << "," << iv.step << "\n";
    }

private:
    Spanner1D impl_;
};

class QuadtreeAdapter final : public OnlineSpanner {
public:
    explicit QuadtreeAdapter(const QuadtreeConfig& c) : OnlineSpanner(c.eps), impl_(c) {}
    void insert(const Point& p) override { impl_.insert(p); }
    const SpannerGraph& graph() const override { return impl_.graph(); }
    double stretch_bound() const override { return 1.0 + eps_; }
    AlgorithmKind kind() const override { return AlgorithmKind::quadtree; }
    void write_details(std::ostream& out) const override {
        out << "level,edges,weight\n";
        for (int l : impl_.levels()) {
            double w = 0.0;
            const auto edges = impl_.level_edges(l);
            for (EdgeId e : edges) w += impl_.graph().edge(e).weight;
            out << l << "," << edges.size() << "," << format_double(w) << "\n";
        }
    }

private:
    QuadtreeSpanner impl_;
};

class SteinerAdapter final : public OnlineSpanner {
public:
    explicit SteinerAdapter(const SteinerConfig& c) : OnlineSpanner(c.eps), impl_(c) {}
    void insert(const Point& p) override { impl_.insert(p); }
    const SpannerGraph& graph() const override { return impl_.graph(); }
    double stretch_bound() const override { return 1.0 + 3.0 * eps_; }
    AlgorithmKind kind() const override { return AlgorithmKind::steiner; }
    void write_details(std::ostream& out) const override {
        out << "level,direction,rect,backbone_weight,connector_weight,edges\n";
        for (const auto& [key, st] : impl_.buckets()) {
            out << key.level << "," << key.direction << ",";
            for (std::size_t i = 0; i < key.rect.size(); ++i) out << (i ? " " : "") << key.rect[i];
            out << "," << format_double(st.backbone_weight) << "," << format_double(st.connector_weight) << ","
                << st.edges << "\n";
        }
    }

private:
    SteinerSpanner impl_;
};

}  // namespace

AlgorithmKind parse_algorithm(std::string_view name) {
    if (name == "1d" || name == "line") return AlgorithmKind::line;
    if (name == "quadtree") return AlgorithmKind::quadtree;
    if (name == "steiner") return AlgorithmKind::steiner;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::string_view algorithm_name(AlgorithmKind k) {
    switch (k) {
        case AlgorithmKind::line: return "1d";
        case AlgorithmKind::quadtree: return "quadtree";
        case AlgorithmKind::steiner: return "steiner";
    }
    return "?";
}

std::unique_ptr<OnlineSpanner> make_online(AlgorithmKind kind, double eps, std::size_t dim, Metric metric,
                                           const OnlineOptions& options) {
    switch (kind) {
        case AlgorithmKind::line:
            if (dim != 1) throw std::invalid_argument("1d algorithm needs dim = 1");
            return std::make_unique<LineAdapter>(eps);
        case AlgorithmKind::quadtree: {
            QuadtreeConfig c;
            c.eps = eps;
            c.dim = dim;
            c.metric = metric;
            c.rule = options.rule;
            return std::make_unique<QuadtreeAdapter>(c);
        }
        case AlgorithmKind::steiner: {
            if (metric != Metric::l2) throw std::invalid_argument("steiner algorithm needs the l2 metric");
            SteinerConfig c;
            c.eps = eps;
            c.dim = dim;
            c.rule = options.rule;
            c.slt.kind = options.slt;
            c.mode = options.backbone;
            return std::make_unique<SteinerAdapter>(c);
        }
    }
    throw std::invalid_argument("unknown algorithm");
}

std::unique_ptr<OnlineSpanner> make_online_with_stretch(AlgorithmKind kind, double eps, std::size_t dim,
                                                        Metric metric, const OnlineOptions& options) {
    return make_online(kind, kind == AlgorithmKind::steiner ? eps / 3.0 : eps, dim, metric, options);
}

}  // namespace spanlab
