#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "spanlab/adversary1d.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/harness.hpp"
#include "spanlab/io.hpp"
#include "spanlab/l1.hpp"
#include "spanlab/online.hpp"
#include "spanlab/oracle.hpp"
#include "spanlab/random.hpp"
#include "spanlab/spanner1d.hpp"
#include "spanlab/steiner_adversary.hpp"

namespace py = pybind11;
using namespace spanlab;

namespace {

Metric metric_of(const std::string& name) { return parse_metric(name); }

py::dict record_dict(const RunRecord& r) {
    py::dict d;
    d["run_id"] = r.run_id;
    d["algorithm"] = r.algorithm;
    d["eps"] = r.eps;
    d["dim"] = r.dim;
    d["metric"] = r.metric;
    d["n"] = r.n;
    d["seed"] = r.seed;
    d["alg_weight"] = r.alg_weight;
    d["mst_weight"] = r.mst_weight;
    d["greedy_weight"] = r.greedy_weight ? py::object(py::float_(*r.greedy_weight)) : py::none();
    d["opt1d_weight"] = r.opt1d_weight ? py::object(py::float_(*r.opt1d_weight)) : py::none();
    d["max_stretch"] = r.max_stretch;
    d["failed"] = r.failed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Online geometric spanners";

    py::class_<StretchReport>(m, "StretchReport")
        .def_readonly("max_stretch", &StretchReport::max_stretch)
        .def_readonly("pairs_checked", &StretchReport::pairs_checked)
        .def_readonly("passed", &StretchReport::passed)
        .def_readonly("t", &StretchReport::t)
        .def_property_readonly("witness", [](const StretchReport& r) {
            return py::make_tuple(r.witness.u, r.witness.v, r.witness.path_weight, r.witness.direct);
        });

    py::class_<SpannerGraph>(m, "SpannerGraph")
        .def_property_readonly("dim", &SpannerGraph::dim)
        .def_property_readonly("vertex_count", &SpannerGraph::vertex_count)
        .def_property_readonly("edge_count", &SpannerGraph::edge_count)
        .def("total_weight", &SpannerGraph::total_weight)
        .def("points", [](const SpannerGraph& g) {
            std::vector<Point> out;
            for (const auto& v : g.vertices()) out.push_back(v.point);
            return out;
        })
        .def("edges", [](const SpannerGraph& g) {
            std::vector<std::tuple<VertexId, VertexId, double>> out;
            for (const auto& e : g.edges())
                if (e.alive) out.emplace_back(e.u, e.v, e.weight);
            return out;
        })
        .def("to_text", [](const SpannerGraph& g) {
            std::ostringstream s;
            write_graph(s, g);
            return s.str();
        });

    m.def("verify_stretch", py::overload_cast<const SpannerGraph&, double>(&verify_stretch), py::arg("graph"),
          py::arg("t"));
    m.def("shortest_path_weight", &shortest_path_weight);
    m.def("mst_weight", [](const std::vector<Point>& pts, const std::string& metric) { return mst_weight(pts, metric_of(metric)); },
          py::arg("points"), py::arg("metric") = "l2");
    m.def("uniform_points", &uniform_points, py::arg("n"), py::arg("dim"), py::arg("seed"));

    py::class_<OnlineSpanner>(m, "OnlineSpanner")
        .def("insert", &OnlineSpanner::insert)
        .def_property_readonly("graph", &OnlineSpanner::graph, py::return_value_policy::reference_internal)
        .def_property_readonly("stretch_bound", &OnlineSpanner::stretch_bound)
        .def_property_readonly("eps", &OnlineSpanner::eps);
    m.def("make_online",
          [](const std::string& algo, double eps, std::size_t dim, const std::string& metric) {
              return make_online(parse_algorithm(algo), eps, dim, metric_of(metric));
          },
          py::arg("algorithm"), py::arg("eps"), py::arg("dim"), py::arg("metric") = "l2");

    m.def("opt_1d", [](const std::vector<double>& xs) { return opt_1d(xs); });
    m.def("adversary_1d_stream", &adversary_1d_stream, py::arg("eps"), py::arg("stages"));
    m.def("adversary_1d_forced_weight", &adversary_1d_forced_weight);

    m.def("steiner_adversary",
          [](double eps, std::size_t stages) {
              auto alg = make_online_with_stretch(AlgorithmKind::steiner, eps, 2);
              SteinerAdversaryConfig c;
              c.eps = eps;
              SteinerAdversary adv(c);
              for (const auto& p : adv.initial()) alg->insert(p);
              py::list rows;
              for (std::size_t i = 2; i <= stages; ++i) {
                  const auto plan = adv.plan(alg->graph());
                  for (const auto& p : plan.batch) alg->insert(p);
                  const double gain = adv.commit(alg->graph());
                  rows.append(py::dict(py::arg("stage") = i, py::arg("gain") = gain,
                                       py::arg("witness") = adv.witness_weight(),
                                       py::arg("bound") = adv.witness_bound(i), py::arg("batch") = plan.batch.size()));
              }
              return rows;
          },
          py::arg("eps"), py::arg("stages"));

    py::class_<L1Construction>(m, "L1Construction")
        .def_readonly("k", &L1Construction::k)
        .def_readonly("dim", &L1Construction::dim)
        .def_readonly("s1", &L1Construction::s1)
        .def_readonly("s2", &L1Construction::s2)
        .def_readonly("hat1", &L1Construction::hat1)
        .def_readonly("hat2", &L1Construction::hat2)
        .def("cross_distance", &L1Construction::cross_distance)
        .def("network", [](const L1Construction& c) { return manhattan_network(c); })
        .def("bipartite_necessary", [](const L1Construction& c) { return verify_bipartite_necessity(c).necessary; });
    m.def("build_l1_2d", &build_l1_2d, py::arg("eps"), py::arg("original_coords") = false);
    m.def("build_l1_highdim", [](double eps, std::size_t dim) { return build_l1_highdim(eps, dim); }, py::arg("eps"),
          py::arg("dim"));

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("weight", &OracleResult::weight)
        .def_readonly("edges", &OracleResult::edges)
        .def_readonly("certified", &OracleResult::certified);
    m.def("greedy_spanner",
          [](const std::vector<Point>& pts, double t, const std::string& metric) { return greedy_spanner(pts, t, metric_of(metric)); },
          py::arg("points"), py::arg("t"), py::arg("metric") = "l2");
    m.def("exact_opt_small",
          [](const std::vector<Point>& pts, double t, const std::string& metric) { return exact_opt_small(pts, t, metric_of(metric)); },
          py::arg("points"), py::arg("t"), py::arg("metric") = "l2");

    m.def("run_experiment",
          [](const std::string& config_text) {
              std::istringstream in(config_text);
              const auto outcome = run_experiment(parse_config(in));
              py::list out;
              for (const auto& r : outcome.records) out.append(record_dict(r));
              return out;
          },
          py::arg("config"), "Runs a `key = value` configuration and returns its records as dicts.");
}
