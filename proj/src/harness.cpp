#include "spanlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spanlab/adversary1d.hpp"
#include "spanlab/io.hpp"
#include "spanlab/oracle.hpp"
#include "spanlab/random.hpp"
#include "spanlab/spanner1d.hpp"

namespace spanlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty()) throw std::invalid_argument("config: bad number for " + key + ": '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s, const std::string& key) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("config: bad integer for " + key + ": '" + s + "'");
    return std::stoull(s);
}

bool parse_bool(const std::string& s, const std::string& key) {
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw std::invalid_argument("config: bad boolean for " + key + ": '" + s + "'");
}

std::string opt_text(const std::optional<double>& x) { return x ? format_double(*x) : std::string{}; }

std::string run_id(const RunConfig& c, double eps, std::size_t n, std::uint64_t seed) {
    std::ostringstream id;
    id << algorithm_name(c.algorithm) << "-" << generator_name(c.generator) << "-e" << format_double(eps) << "-d"
       << c.dim << "-n" << n << "-s" << seed;
    return id.str();
}

}  // namespace

Generator parse_generator(std::string_view name) {
    if (name == "uniform") return Generator::uniform;
    if (name == "file") return Generator::file;
    if (name == "adversary-1d" || name == "adversary_1d") return Generator::adversary_1d;
    throw std::invalid_argument("unknown generator: " + std::string(name));
}

std::string_view generator_name(Generator g) {
    switch (g) {
        case Generator::uniform: return "uniform";
        case Generator::file: return "file";
        case Generator::adversary_1d: return "adversary-1d";
    }
    return "?";
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "algorithm") {
        c.algorithm = parse_algorithm(value);
    } else if (key == "generator") {
        c.generator = parse_generator(value);
    } else if (key == "eps") {
        c.eps.clear();
        for (const auto& x : split(value, ',')) c.eps.push_back(parse_double(x, key));
    } else if (key == "n") {
        c.n.clear();
        for (const auto& x : split(value, ',')) c.n.push_back(parse_uint(x, key));
    } else if (key == "seed" || key == "seeds") {
        c.seeds.clear();
        for (const auto& x : split(value, ',')) c.seeds.push_back(parse_uint(x, key));
    } else if (key == "dim") {
        c.dim = parse_uint(value, key);
    } else if (key == "metric") {
        c.metric = parse_metric(value);
    } else if (key == "c1") {
        c.options.rule.c1 = parse_double(value, key);
    } else if (key == "c2") {
        c.options.rule.c2 = parse_double(value, key);
    } else if (key == "slt") {
        if (value == "dyadic") c.options.slt = SltKind::dyadic;
        else if (value == "star") c.options.slt = SltKind::star;
        else throw std::invalid_argument("config: slt must be dyadic or star");
    } else if (key == "backbone") {
        if (value == "lazy") c.options.backbone = BackboneMode::lazy;
        else if (value == "eager") c.options.backbone = BackboneMode::eager;
        else throw std::invalid_argument("config: backbone must be lazy or eager");
    } else if (key == "input") {
        c.input = value;
    } else if (key == "stages") {
        c.stages = parse_uint(value, key);
    } else if (key == "checkpoints") {
        c.checkpoints = parse_bool(value, key);
    } else if (key == "greedy_limit") {
        c.greedy_limit = parse_uint(value, key);
    } else if (key == "record_runtime") {
        c.record_runtime = parse_bool(value, key);
    } else if (key == "out") {
        c.out = value;
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    for (double e : c.eps)
        if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("config: eps must lie in (0, 1)");
    if (c.dim == 0) throw std::invalid_argument("config: dim must be positive");
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return base;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    return parse_config(in, std::move(base));
}

std::vector<Point> generate_points(const RunConfig& c, double eps, std::size_t n, std::uint64_t seed) {
    switch (c.generator) {
        case Generator::uniform:
            return uniform_points(n, c.dim, seed);
        case Generator::file: {
            auto ps = read_points_file(c.input);
            if (ps.dim != c.dim) throw std::invalid_argument("point file dimension differs from dim");
            if (n > 0 && n < ps.points.size()) ps.points.resize(n);
            return ps.points;
        }
        case Generator::adversary_1d: {
            if (c.dim != 1) throw std::invalid_argument("adversary-1d generator needs dim = 1");
            std::vector<Point> out;
            for (double x : adversary_1d_stream(eps, c.stages)) out.push_back({x});
            return out;
        }
    }
    return {};
}

RunOutcome run_experiment(const RunConfig& c) {
    RunOutcome outcome;
    for (double eps : c.eps)
        for (std::size_t n_req : c.n)
            for (std::uint64_t seed : c.seeds) {
                const auto points = generate_points(c, eps, n_req, seed);
                if (points.empty()) continue;
                const auto start = std::chrono::steady_clock::now();
                auto alg = make_online(c.algorithm, eps, c.dim, c.metric, c.options);
                RunRecord r;
                r.n = points.size();
                r.run_id = run_id(c, eps, r.n, seed);
                r.algorithm = std::string(algorithm_name(c.algorithm));
                r.eps = eps;
                r.dim = c.dim;
                r.metric = std::string(metric_name(c.metric));
                r.seed = seed;
                std::size_t next_check = 2;
                for (std::size_t i = 0; i < points.size(); ++i) {
                    alg->insert(points[i]);
                    const bool last = i + 1 == points.size();
                    if (!last && !(c.checkpoints && i + 1 == next_check)) continue;
                    if (i + 1 == next_check) next_check *= 2;
                    const auto rep = verify_stretch(alg->graph(), alg->stretch_bound());
                    r.max_stretch = std::max(r.max_stretch, rep.max_stretch);
                    if (!rep.passed) {
                        r.failed = true;
                        const auto& g = alg->graph();
                        std::ostringstream w;
                        w << "FAILED " << r.run_id << " after " << (i + 1) << " points: pair (" << g.vertex(rep.witness.u).index
                          << ", " << g.vertex(rep.witness.v).index << ") path " << format_double(rep.witness.path_weight)
                          << " direct " << format_double(rep.witness.direct) << " stretch " << format_double(rep.max_stretch)
                          << " > " << format_double(rep.t);
                        outcome.failures.push_back(w.str());
                        break;
                    }
                }
                r.alg_weight = alg->graph().total_weight();
                r.mst_weight = mst_weight(points, c.metric);
                if (points.size() <= c.greedy_limit && points.size() >= 2)
                    r.greedy_weight = greedy_spanner(points, 1.0 + eps, c.metric).weight;
                if (c.algorithm == AlgorithmKind::line) {
                    std::vector<double> xs;
                    for (const auto& p : points) xs.push_back(p[0]);
                    r.opt1d_weight = opt_1d(xs);
                }
                if (c.record_runtime)
                    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
                outcome.records.push_back(std::move(r));
            }
    return outcome;
}

const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> cols{"run_id",     "algorithm",     "eps",         "dim",        "metric",
                                               "n",          "seed",          "alg_weight",  "mst_weight", "greedy_weight",
                                               "opt1d_weight", "max_stretch", "runtime_ms", "status"};
    return cols;
}

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    const auto& cols = record_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : records) {
        out << r.run_id << "," << r.algorithm << "," << format_double(r.eps) << "," << r.dim << "," << r.metric << ","
            << r.n << "," << r.seed << "," << format_double(r.alg_weight) << "," << format_double(r.mst_weight) << ","
            << opt_text(r.greedy_weight) << "," << opt_text(r.opt1d_weight) << "," << format_double(r.max_stretch) << ","
            << format_double(r.runtime_ms) << "," << (r.failed ? "FAILED" : "OK") << "\n";
    }
}

void write_records_json(std::ostream& out, const std::vector<RunRecord>& records) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["run_id"] = r.run_id;
        j["algorithm"] = r.algorithm;
        j["eps"] = r.eps;
        j["dim"] = r.dim;
        j["metric"] = r.metric;
        j["n"] = r.n;
        j["seed"] = r.seed;
        j["alg_weight"] = r.alg_weight;
        j["mst_weight"] = r.mst_weight;
        j["greedy_weight"] = r.greedy_weight ? nlohmann::ordered_json(*r.greedy_weight) : nullptr;
        j["opt1d_weight"] = r.opt1d_weight ? nlohmann::ordered_json(*r.opt1d_weight) : nullptr;
        j["max_stretch"] = r.max_stretch;
        j["runtime_ms"] = r.runtime_ms;
        j["status"] = r.failed ? "FAILED" : "OK";
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << "\n";
}

std::vector<RunRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) return {};
    const auto header = split(trim(line), ',');
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const auto& name : record_columns())
        if (!col.count(name)) throw std::invalid_argument("records csv: missing column " + name);
    std::vector<RunRecord> out;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != header.size()) throw std::invalid_argument("records csv: wrong field count");
        auto at = [&](const char* name) -> const std::string& { return f[col.at(name)]; };
        auto opt = [&](const char* name) -> std::optional<double> {
            return at(name).empty() ? std::nullopt : std::optional<double>(parse_double(at(name), name));
        };
        RunRecord r;
        r.run_id = at("run_id");
        r.algorithm = at("algorithm");
        r.eps = parse_double(at("eps"), "eps");
        r.dim = parse_uint(at("dim"), "dim");
        r.metric = at("metric");
        r.n = parse_uint(at("n"), "n");
        r.seed = parse_uint(at("seed"), "seed");
        r.alg_weight = parse_double(at("alg_weight"), "alg_weight");
        r.mst_weight = parse_double(at("mst_weight"), "mst_weight");
        r.greedy_weight = opt("greedy_weight");
        r.opt1d_weight = opt("opt1d_weight");
        r.max_stretch = parse_double(at("max_stretch"), "max_stretch");
        r.runtime_ms = parse_double(at("runtime_ms"), "runtime_ms");
        r.failed = at("status") == "FAILED";
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<ReportRow> report(const std::vector<RunRecord>& records) {
    std::map<std::tuple<std::string, double, std::size_t>, std::vector<const RunRecord*>> groups;
    for (const auto& r : records) groups[{r.algorithm, r.eps, r.dim}].push_back(&r);
    std::vector<ReportRow> rows;
    for (const auto& [key, rs] : groups) {
        ReportRow row;
        std::tie(row.algorithm, row.eps, row.dim) = key;
        row.runs = rs.size();
        std::vector<std::pair<double, double>> fit;  // (log2 n, alg / mst)
        double greedy_sum = 0.0, opt_sum = 0.0;
        std::size_t greedy_count = 0, opt_count = 0, mst_count = 0;
        for (const auto* r : rs) {
            if (r->mst_weight > 0.0) {
                const double ratio = r->alg_weight / r->mst_weight;
                row.mean_ratio_mst += ratio;
                row.max_ratio_mst = std::max(row.max_ratio_mst, ratio);
                fit.emplace_back(std::log2(static_cast<double>(r->n)), ratio);
                ++mst_count;
            }
            if (r->greedy_weight && *r->greedy_weight > 0.0) {
                greedy_sum += r->alg_weight / *r->greedy_weight;
                ++greedy_count;
            }
            if (r->opt1d_weight && *r->opt1d_weight > 0.0) {
                opt_sum += r->alg_weight / *r->opt1d_weight;
                ++opt_count;
            }
        }
        if (mst_count) row.mean_ratio_mst /= static_cast<double>(mst_count);
        if (greedy_count) row.mean_ratio_greedy = greedy_sum / static_cast<double>(greedy_count);
        if (opt_count) row.mean_ratio_opt1d = opt_sum / static_cast<double>(opt_count);
        double mx = 0.0, my = 0.0;
        for (const auto& [x, y] : fit) {
            mx += x;
            my += y;
        }
        if (!fit.empty()) {
            mx /= static_cast<double>(fit.size());
            my /= static_cast<double>(fit.size());
        }
        double sxx = 0.0, sxy = 0.0;
        for (const auto& [x, y] : fit) {
            sxx += (x - mx) * (x - mx);
            sxy += (x - mx) * (y - my);
        }
        row.slope_log_n = sxx > 0.0 ? sxy / sxx : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "algorithm,eps,dim,runs,mean_alg_over_mst,max_alg_over_mst,mean_alg_over_greedy,mean_alg_over_opt1d,"
           "slope_vs_log2n\n";
    for (const auto& r : rows)
        out << r.algorithm << "," << format_double(r.eps) << "," << r.dim << "," << r.runs << ","
            << format_double(r.mean_ratio_mst) << "," << format_double(r.max_ratio_mst) << ","
            << opt_text(r.mean_ratio_greedy) << "," << opt_text(r.mean_ratio_opt1d) << ","
            << format_double(r.slope_log_n) << "\n";
}

std::string plot_script(const std::string& records_csv) {
    std::ostringstream s;
    s << "import csv\n"
         "import sys\n"
         "from collections import defaultdict\n\n"
         "import matplotlib\n"
         "matplotlib.use(\"Agg\")\n"
         "import matplotlib.pyplot as plt\n\n"
         "path = sys.argv[1] if len(sys.argv) > 1 else \""
      << records_csv
      << "\"\n"
         "series = defaultdict(list)\n"
         "with open(path) as f:\n"
         "    for row in csv.DictReader(f):\n"
         "        mst = float(row[\"mst_weight\"])\n"
         "        if mst > 0:\n"
         "            key = f\"{row['algorithm']} eps={row['eps']} d={row['dim']}\"\n"
         "            series[key].append((int(row[\"n\"]), float(row[\"alg_weight\"]) / mst))\n\n"
         "fig, ax = plt.subplots()\n"
         "for key, pts in sorted(series.items()):\n"
         "    pts.sort()\n"
         "    ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=\"o\", label=key)\n"
         "ax.set_xscale(\"log\", base=2)\n"
         "ax.set_xlabel(\"n\")\n"
         "ax.set_ylabel(\"weight / MST\")\n"
         "ax.legend()\n"
         "fig.savefig(path.rsplit(\".\", 1)[0] + \"_ratio.png\", dpi=120)\n";
    return s.str();
}

std::string output_directory(const std::string& fallback) {
    if (const char* env = std::getenv("SPANLAB_OUT"); env && *env) return env;
    return fallback;
}

}  // namespace spanlab
