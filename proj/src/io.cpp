#include "spanlab/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace spanlab {

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

static double parse_double(const std::string& tok, std::size_t line) {
    double v = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw std::runtime_error("line " + std::to_string(line) + ": bad number '" + tok + "'");
    return v;
}

static bool skip_line(const std::string& s) {
    for (char c : s) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

PointSet read_points(std::istream& in) {
    PointSet ps;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        std::istringstream ss(line);
        if (!header) {
            std::string word;
            ss >> word >> ps.dim;
            if (word != "dim" || ps.dim == 0)
                throw std::runtime_error("point file must start with 'dim <d>'");
            header = true;
            continue;
        }
        Point p;
        std::string tok;
        while (ss >> tok) p.push_back(parse_double(tok, lineno));
        if (p.size() != ps.dim)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(ps.dim) + " coordinates");
        ps.points.push_back(std::move(p));
    }
    if (!header) throw std::runtime_error("point file must start with 'dim <d>'");
    return ps;
}

PointSet read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_points(in);
}

void write_points(std::ostream& out, const PointSet& ps) {
    out << "dim " << ps.dim << '\n';
    for (const auto& p : ps.points) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << format_double(p[i]);
        out << '\n';
    }
}

void write_points_file(const std::string& path, const PointSet& ps) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_points(out, ps);
}

void write_graph(std::ostream& out, const SpannerGraph& g) {
    out << "dim " << g.dim() << '\n' << "metric " << metric_name(g.metric()) << '\n';
    for (const auto& v : g.vertices()) {
        out << "vertex " << v.index << ' ' << (v.kind == VertexKind::input ? "input" : "steiner");
        for (double c : v.point) out << ' ' << format_double(c);
        out << '\n';
    }
    for (const auto& e : g.edges()) {
        if (!e.alive) continue;
        out << "edge " << e.u << ' ' << e.v << ' ' << format_double(e.weight) << ' ' << e.index
            << '\n';
    }
}

void write_graph_file(const std::string& path, const SpannerGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_graph(out, g);
}

SpannerGraph read_graph(std::istream& in) {
    std::string line;
    std::size_t lineno = 0, dim = 0;
    Metric metric = Metric::l2;
    std::optional<SpannerGraph> g;
    auto graph = [&]() -> SpannerGraph& {
        if (!g) {
            if (dim == 0) throw std::runtime_error("graph file: missing 'dim' record");
            g.emplace(dim, metric);
        }
        return *g;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        std::istringstream ss(line);
        std::string kind;
        ss >> kind;
        if (kind == "dim") {
            ss >> dim;
        } else if (kind == "metric") {
            std::string m;
            ss >> m;
            metric = parse_metric(m);
        } else if (kind == "vertex") {
            std::size_t id;
            std::string vk, tok;
            ss >> id >> vk;
            if (id != graph().vertex_count())
                throw std::runtime_error("line " + std::to_string(lineno) + ": vertex ids must be sequential");
            Point p;
            while (ss >> tok) p.push_back(parse_double(tok, lineno));
            if (vk != "input" && vk != "steiner")
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad vertex kind");
            graph().add_vertex(std::move(p), vk == "input" ? VertexKind::input : VertexKind::steiner);
        } else if (kind == "edge") {
            VertexId u, v;
            std::string w;
            std::size_t index;
            if (!(ss >> u >> v >> w >> index))
                throw std::runtime_error("line " + std::to_string(lineno) + ": malformed edge");
            graph().add_edge_record(u, v, parse_double(w, lineno), index);
        } else {
            throw std::runtime_error("line " + std::to_string(lineno) + ": unknown record '" + kind + "'");
        }
    }
    return std::move(graph());
}

SpannerGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph(in);
}

}  // namespace spanlab
