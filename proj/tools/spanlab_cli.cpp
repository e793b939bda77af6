#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spanlab/adversary1d.hpp"
#include "spanlab/harness.hpp"
#include "spanlab/io.hpp"
#include "spanlab/l1.hpp"
#include "spanlab/oracle.hpp"
#include "spanlab/spanner1d.hpp"
#include "spanlab/steiner_adversary.hpp"

namespace fs = std::filesystem;
using namespace spanlab;

namespace {

/// Flags shared by the run-* subcommands; unset flags leave the config file value alone.
struct RunFlags {
    std::string config;
    std::string eps, n, seed, metric, input, generator, out, c1, c2, slt, backbone;
    std::optional<std::size_t> dim, stages;
    bool no_checkpoints = false;
    bool record_runtime = false;
    bool write_graphs = false;
};

void add_run_flags(CLI::App* cmd, RunFlags& f, AlgorithmKind kind) {
    const bool with_dim = kind != AlgorithmKind::line;
    cmd->add_option("--config", f.config, "key = value config file");
    cmd->add_option("--eps", f.eps, "eps, or a comma-separated list");
    cmd->add_option("--n", f.n, "point counts, comma-separated");
    cmd->add_option("--seed", f.seed, "seeds, comma-separated");
    if (with_dim) cmd->add_option("--dim", f.dim, "dimension");
    cmd->add_option("--metric", f.metric, "l1 or l2");
    cmd->add_option("--input", f.input, "point file (selects the file generator)");
    cmd->add_option("--generator", f.generator, "uniform, file or adversary-1d");
    cmd->add_option("--stages", f.stages, "stages for the adversary-1d generator");
    cmd->add_option("--out", f.out, "output directory (SPANLAB_OUT overrides)");
    if (kind != AlgorithmKind::line) {
        cmd->add_option("--c1", f.c1, "inner annulus constant");
        cmd->add_option("--c2", f.c2, "outer annulus constant");
    }
    if (kind == AlgorithmKind::steiner) {
        cmd->add_option("--slt", f.slt, "dyadic or star");
        cmd->add_option("--backbone", f.backbone, "lazy or eager");
    }
    cmd->add_flag("--no-checkpoints", f.no_checkpoints, "certify only at the end of each run");
    cmd->add_flag("--record-runtime", f.record_runtime, "fill runtime_ms (breaks byte-identical output)");
    cmd->add_flag("--write-graphs", f.write_graphs, "also write the final graph of every run");
}

RunConfig build_config(const RunFlags& f, AlgorithmKind kind) {
    RunConfig c;
    c.algorithm = kind;
    if (kind == AlgorithmKind::line) c.dim = 1;
    if (!f.config.empty()) c = parse_config_file(f.config, c);
    c.algorithm = kind;
    auto set = [&](const char* key, const std::string& v) {
        if (!v.empty()) apply_setting(c, key, v);
    };
    set("eps", f.eps);
    set("n", f.n);
    set("seed", f.seed);
    set("metric", f.metric);
    if (!f.input.empty()) {
        c.generator = Generator::file;
        c.input = f.input;
    }
    set("generator", f.generator);
    set("out", f.out);
    set("c1", f.c1);
    set("c2", f.c2);
    set("slt", f.slt);
    set("backbone", f.backbone);
    if (f.dim) c.dim = *f.dim;
    if (f.stages) c.stages = *f.stages;
    if (f.no_checkpoints) c.checkpoints = false;
    if (f.record_runtime) c.record_runtime = true;
    if (kind == AlgorithmKind::line && c.dim != 1) throw std::invalid_argument("run-1d needs dim = 1");
    return c;
}

fs::path prepare_out(const std::string& flag) {
    fs::path dir = output_directory(flag.empty() ? "out" : flag);
    fs::create_directories(dir);
    return dir;
}

template <class Fn>
void write_file(const fs::path& path, Fn fn) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    fn(out);
}

int run_command(const RunFlags& f, AlgorithmKind kind) {
    const RunConfig c = build_config(f, kind);
    const fs::path dir = prepare_out(c.out);
    const auto outcome = run_experiment(c);
    write_file(dir / "records.csv", [&](std::ostream& o) { write_records_csv(o, outcome.records); });
    write_file(dir / "records.json", [&](std::ostream& o) { write_records_json(o, outcome.records); });
    if (f.write_graphs) {
        for (const auto& r : outcome.records) {
            auto alg = make_online(c.algorithm, r.eps, c.dim, c.metric, c.options);
            for (const auto& p : generate_points(c, r.eps, r.n, r.seed)) alg->insert(p);
            write_graph_file((dir / (r.run_id + ".graph")).string(), alg->graph());
            write_file(dir / (r.run_id + "_details.csv"), [&](std::ostream& o) { alg->write_details(o); });
        }
    }
    write_records_csv(std::cout, outcome.records);
    for (const auto& w : outcome.failures) std::cerr << w << "\n";
    return outcome.ok() ? 0 : 1;
}

int adversary_command(const std::string& kind, double eps, std::size_t stages, const std::string& algo,
                      const std::string& out_flag) {
    const fs::path dir = prepare_out(out_flag);
    const AlgorithmKind ak = parse_algorithm(algo);
    std::ostringstream csv;
    csv << "stage,alg_weight,opt_witness_weight,gain_in_region\n";
    PointSet ps;
    std::unique_ptr<OnlineSpanner> alg;
    if (kind == "1d") {
        ps.dim = 1;
        alg = make_online(ak, eps, 1);
        Adversary1D adv(eps);
        std::size_t done = 0;
        while (done < stages) {
            const auto ev = adv.next();
            if (ev.kind == Adv1DEvent::Kind::point) {
                alg->insert({ev.x});
                ps.points.push_back({ev.x});
                continue;
            }
            ++done;
            csv << ev.stage << "," << format_double(alg->graph().total_weight()) << ","
                << format_double(opt_1d(adv.points())) << ",\n";
        }
    } else if (kind == "steiner-2d") {
        ps.dim = 2;
        alg = make_online_with_stretch(ak, eps, 2);
        SteinerAdversaryConfig ac;
        ac.eps = eps;
        SteinerAdversary adv(ac);
        for (const auto& p : adv.initial()) {
            alg->insert(p);
            ps.points.push_back(p);
        }
        csv << 1 << "," << format_double(alg->graph().total_weight()) << "," << format_double(adv.witness_weight()) << ",\n";
        for (std::size_t i = 2; i <= stages; ++i) {
            const auto plan = adv.plan(alg->graph());
            for (const auto& p : plan.batch) {
                alg->insert(p);
                ps.points.push_back(p);
            }
            const double gain = adv.commit(alg->graph());
            csv << i << "," << format_double(alg->graph().total_weight()) << "," << format_double(adv.witness_weight())
                << "," << format_double(gain) << "\n";
        }
    } else {
        throw std::invalid_argument("unknown adversary kind: " + kind);
    }
    write_points_file((dir / "adversary_points.txt").string(), ps);
    write_graph_file((dir / "adversary_graph.txt").string(), alg->graph());
    write_file(dir / "adversary_stages.csv", [&](std::ostream& o) { o << csv.str(); });
    std::cout << csv.str();
    const auto rep = verify_stretch(alg->graph(), alg->stretch_bound());
    std::cout << "max_stretch " << format_double(rep.max_stretch) << (rep.passed ? " ok" : " FAILED") << "\n";
    return rep.passed ? 0 : 1;
}

int construct_command(const std::string& kind, double eps, std::size_t dim, bool original, const std::string& network,
                      const std::string& out_flag) {
    const fs::path dir = prepare_out(out_flag);
    L1Construction c;
    if (kind == "l1-2d") {
        c = build_l1_2d(eps, original);
    } else if (kind == "l1-hd") {
        L1Network net = L1Network::refined;
        if (network == "quadtree") net = L1Network::quadtree;
        else if (network != "refined") throw std::invalid_argument("network must be quadtree or refined");
        c = build_l1_highdim(eps, dim, net);
    } else {
        throw std::invalid_argument("unknown construction kind: " + kind);
    }
    const SpannerGraph g = manhattan_network(c);
    write_points_file((dir / "construction_points.txt").string(), {c.dim, c.all_points()});
    write_graph_file((dir / "construction_network.txt").string(), g);
    const auto bip = verify_bipartite_necessity(c);
    std::cout << "k " << c.k << "\n|S1| " << c.s1.size() << "\n|hat S1| " << c.hat1.size() << "\ncross_distance "
              << format_double(c.cross_distance()) << "\nnetwork_weight " << format_double(g.total_weight())
              << "\ntree_weight " << format_double(tree_weight(c)) << "\nbipartite_necessary "
              << (bip.necessary ? "true" : "false") << "\nforced_bipartite_weight "
              << format_double(forced_bipartite_weight(c)) << "\n";
    return 0;
}

int verify_command(const std::string& graph, double t) {
    const SpannerGraph g = read_graph_file(graph);
    const auto rep = verify_stretch(g, t);
    std::cout << "pairs " << rep.pairs_checked << "\nmax_stretch " << format_double(rep.max_stretch) << "\nwitness "
              << rep.witness.u << " " << rep.witness.v << " " << format_double(rep.witness.path_weight) << " "
              << format_double(rep.witness.direct) << "\n"
              << (rep.passed ? "PASS" : "FAIL") << "\n";
    return rep.passed ? 0 : 1;
}

int oracle_command(const std::string& method, double t, const std::string& input, const std::string& metric,
                   const std::string& out_flag) {
    const fs::path dir = prepare_out(out_flag);
    const auto ps = read_points_file(input);
    const Metric m = parse_metric(metric);
    OracleResult r;
    switch (parse_oracle_method(method)) {
        case OracleMethod::greedy: r = greedy_spanner(ps.points, t, m); break;
        case OracleMethod::mst: r = mst_oracle(ps.points, m); break;
        case OracleMethod::exact: r = exact_opt_small(ps.points, t, m); break;
    }
    write_graph_file((dir / ("oracle_" + method + ".graph")).string(), oracle_graph(ps.points, r, m));
    std::cout << "method " << method << "\nweight " << format_double(r.weight) << "\nedges " << r.edges.size()
              << "\ncertified " << (r.certified ? "true" : "false") << "\n";
    return 0;
}

int report_command(const std::string& input, const std::string& out_flag) {
    const fs::path dir = prepare_out(out_flag);
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open " + input);
    const auto rows = report(read_records_csv(in));
    write_file(dir / "report.csv", [&](std::ostream& o) { write_report_csv(o, rows); });
    write_file(dir / "plot_report.py", [&](std::ostream& o) { o << plot_script(input); });
    write_report_csv(std::cout, rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online geometric spanners: algorithms, adversaries, oracles"};
    app.require_subcommand(1);

    RunFlags f1, fq, fs_;
    add_run_flags(app.add_subcommand("run-1d", "1D online spanner"), f1, AlgorithmKind::line);
    add_run_flags(app.add_subcommand("run-quadtree", "quadtree online spanner"), fq, AlgorithmKind::quadtree);
    add_run_flags(app.add_subcommand("run-steiner", "Steiner online spanner"), fs_, AlgorithmKind::steiner);

    auto* adv = app.add_subcommand("adversary", "run an adversary against an algorithm");
    std::string adv_kind = "1d", adv_algo;
    double adv_eps = 0.25;
    std::size_t adv_stages = 3;
    std::string adv_out;
    adv->add_option("--kind", adv_kind, "1d or steiner-2d")->check(CLI::IsMember({"1d", "steiner-2d"}));
    adv->add_option("--eps", adv_eps, "eps");
    adv->add_option("--stages", adv_stages, "stages");
    adv->add_option("--algo", adv_algo, "algorithm under test: 1d, quadtree or steiner");
    adv->add_option("--out", adv_out, "output directory");

    auto* con = app.add_subcommand("construct", "L1 lower-bound constructions");
    std::string con_kind = "l1-2d", con_network = "refined", con_out;
    double con_eps = 0.25;
    std::size_t con_dim = 3;
    bool con_original = false;
    con->add_option("--kind", con_kind, "l1-2d or l1-hd")->check(CLI::IsMember({"l1-2d", "l1-hd"}));
    con->add_option("--eps", con_eps, "eps");
    con->add_option("--dim", con_dim, "dimension for l1-hd");
    con->add_option("--network", con_network, "l1-hd network: refined or quadtree");
    con->add_flag("--original-coords", con_original, "l1-2d: s_i = (i, 2^k - i)");
    con->add_option("--out", con_out, "output directory");

    auto* ver = app.add_subcommand("verify", "certify the stretch of a graph file");
    std::string ver_graph;
    double ver_t = 1.0;
    ver->add_option("--graph", ver_graph, "graph file")->required();
    ver->add_option("--t", ver_t, "stretch")->required();

    auto* orc = app.add_subcommand("oracle", "offline baselines");
    std::string orc_method = "greedy", orc_input, orc_metric = "l2", orc_out;
    double orc_t = 1.25;
    orc->add_option("--method", orc_method, "greedy, mst or exact")->check(CLI::IsMember({"greedy", "mst", "exact"}));
    orc->add_option("--t", orc_t, "stretch");
    orc->add_option("--input", orc_input, "point file")->required();
    orc->add_option("--metric", orc_metric, "l1 or l2");
    orc->add_option("--out", orc_out, "output directory");

    auto* rep = app.add_subcommand("report", "ratio tables and a plot script from records.csv");
    std::string rep_input, rep_out;
    rep->add_option("--input", rep_input, "records csv")->required();
    rep->add_option("--out", rep_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("run-1d")) return run_command(f1, AlgorithmKind::line);
        if (app.got_subcommand("run-quadtree")) return run_command(fq, AlgorithmKind::quadtree);
        if (app.got_subcommand("run-steiner")) return run_command(fs_, AlgorithmKind::steiner);
        if (app.got_subcommand(adv)) {
            if (adv_algo.empty()) adv_algo = adv_kind == "1d" ? "1d" : "steiner";
            return adversary_command(adv_kind, adv_eps, adv_stages, adv_algo, adv_out);
        }
        if (app.got_subcommand(con)) return construct_command(con_kind, con_eps, con_dim, con_original, con_network, con_out);
        if (app.got_subcommand(ver)) return verify_command(ver_graph, ver_t);
        if (app.got_subcommand(orc)) return oracle_command(orc_method, orc_t, orc_input, orc_metric, orc_out);
        if (app.got_subcommand(rep)) return report_command(rep_input, rep_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
