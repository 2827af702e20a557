#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccd/analysis.hpp"
#include "ccd/cli.hpp"
#include "ccd/combinatorics.hpp"
#include "ccd/generator.hpp"
#include "ccd/graph.hpp"
#include "ccd/objective.hpp"
#include "ccd/optimizer.hpp"

namespace py = pybind11;
using namespace ccd;

namespace {

using EdgeTuple = std::tuple<Vertex, Vertex, double>;

WeightedGraph make_graph(const std::vector<EdgeTuple> &edges, std::size_t n) {
  std::vector<WeightedEdge> e;
  e.reserve(edges.size());
  for (const auto &[u, v, w] : edges) {
    e.push_back({u, v, w});
  }
  return build_graph(e, n);
}

VertexVolumes make_volumes(const std::optional<std::vector<Volume>> &f, std::size_t n) {
  if (!f) {
    return VertexVolumes::zeros(n);
  }
  if (f->size() != n) {
    throw std::invalid_argument("volumes must have one entry per vertex");
  }
  return VertexVolumes(*f);
}

Assignment make_assignment(const std::vector<Label> &labels, std::size_t n) {
  Assignment x(labels);
  x.validate(n);
  return x;
}

py::int_ to_int(const BigCount &c) { return py::int_(py::module_::import("builtins").attr("int")(c.str())); }

py::dict selection(const EnsembleSelection &s) {
  py::dict d;
  const auto labels = s.state.assignment.labels();
  d["labels"] = std::vector<Label>(labels.begin(), labels.end());
  d["modularity"] = s.state.modularity;
  d["communities"] = s.state.assignment.community_count();
  d["config"] = s.config;
  d["chain"] = s.chain;
  d["round"] = s.state.round;
  d["sweep"] = s.state.sweep;
  return d;
}

py::object nan_to_none(double v) { return std::isnan(v) ? py::object(py::none()) : py::object(py::float_(v)); }

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Volume-constrained community detection";

  py::class_<WeightedGraph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("edges"), py::arg("vertex_count"))
      .def_property_readonly("vertex_count", &WeightedGraph::vertex_count)
      .def_property_readonly("total_weight", &WeightedGraph::total_weight)
      .def_property_readonly("edge_count", &WeightedGraph::edge_count)
      .def("degree", &WeightedGraph::degree, py::arg("u"))
      .def("weight", &WeightedGraph::weight, py::arg("u"), py::arg("v"))
      .def("edges", [](const WeightedGraph &g) {
        std::vector<EdgeTuple> out;
        for (const auto &e : g.edges()) {
          out.emplace_back(e.u, e.v, e.weight);
        }
        return out;
      });

  m.def(
      "modularity",
      [](const WeightedGraph &g, const std::vector<Label> &labels) {
        return modularity(g, make_assignment(labels, g.vertex_count()));
      },
      py::arg("graph"), py::arg("labels"));

  m.def(
      "hamiltonian",
      [](const WeightedGraph &g, const std::vector<Volume> &volumes, const std::vector<Label> &labels, Volume tau,
         double lam) {
        const std::size_t n = g.vertex_count();
        return hamiltonian(g, make_volumes(volumes, n), make_assignment(labels, n), PenaltyContext::make(g, tau, lam));
      },
      py::arg("graph"), py::arg("volumes"), py::arg("labels"), py::arg("tau"), py::arg("lam") = 1.0);

  m.def(
      "is_infeasible",
      [](const std::vector<Volume> &volumes, const std::vector<Label> &labels, Volume tau) {
        return infeasibility(VertexVolumes(volumes), make_assignment(labels, volumes.size()), tau);
      },
      py::arg("volumes"), py::arg("labels"), py::arg("tau"));

  m.def(
      "fold",
      [](const WeightedGraph &g, const std::optional<std::vector<Volume>> &volumes, const std::vector<Label> &labels) {
        const std::size_t n = g.vertex_count();
        FoldResult r = fold(g, make_volumes(volumes, n), make_assignment(labels, n));
        const auto folded = r.volumes.values();
        return py::make_tuple(std::move(r.graph), std::vector<Volume>(folded.begin(), folded.end()), r.map.parent);
      },
      py::arg("graph"), py::arg("volumes"), py::arg("labels"));

  m.def(
      "detect",
      [](const WeightedGraph &g, const std::optional<std::vector<Volume>> &volumes, Volume tau,
         const std::string &penalty, const std::string &cooling, double theta_cap, std::size_t sweeps,
         std::size_t rounds, std::size_t chains, std::uint64_t seed, std::size_t threads, bool early_stop) {
        const VertexVolumes f = make_volumes(volumes, g.vertex_count());
        std::vector<ChainConfig> configs{{PenaltySchedule::none(), cli::parse_cooling(cooling, theta_cap), sweeps,
                                          rounds}};
        const PenaltySchedule schedule = cli::parse_penalty(penalty);
        if (schedule.kind != PenaltySchedule::Kind::zero) {
          configs.push_back({schedule, configs.front().cooling, sweeps, rounds});
        }
        EnsembleOptions opts;
        opts.chains = chains;
        opts.seed = seed;
        opts.threads = threads;
        opts.optimize.early_stop = early_stop;
        opts.optimize.keep_snapshots = false;
        EnsembleResult r;
        {
          py::gil_scoped_release release;
          r = run_ensemble(g, f, tau, configs, opts);
        }
        py::dict d;
        d["unconstrained"] = selection(r.x_ddagger);
        d["constrained"] = r.x_dagger ? py::object(selection(*r.x_dagger)) : py::object(py::none());
        d["feasible_space_empty"] = r.feasible_space_empty;
        d["diagnostic"] = r.diagnostic;
        return d;
      },
      py::arg("graph"), py::arg("volumes") = py::none(), py::arg("tau") = 0, py::arg("penalty") = "end",
      py::arg("cooling") = "exp2", py::arg("theta_cap") = 0x1.0p40, py::arg("sweeps") = 30, py::arg("rounds") = 5,
      py::arg("chains") = 250, py::arg("seed") = 0, py::arg("threads") = 0, py::arg("early_stop") = true);

  m.def(
      "default_tau",
      [](const std::vector<Volume> &volumes, const std::vector<Label> &labels) {
        return default_tau(VertexVolumes(volumes), make_assignment(labels, volumes.size()));
      },
      py::arg("volumes"), py::arg("labels"));

  m.def(
      "brute_force",
      [](const WeightedGraph &g, const std::optional<std::vector<Volume>> &volumes, Volume tau,
         bool constrained) -> py::object {
        const auto best = brute_force_optimum(g, make_volumes(volumes, g.vertex_count()), tau, constrained);
        if (!best) {
          return py::none();
        }
        const auto labels = best->first.labels();
        return py::make_tuple(std::vector<Label>(labels.begin(), labels.end()), best->second);
      },
      py::arg("graph"), py::arg("volumes") = py::none(), py::arg("tau") = 0, py::arg("constrained") = false);

  m.def("stirling2", [](unsigned n, unsigned k) { return to_int(stirling2(n, k)); }, py::arg("n"), py::arg("k"));
  m.def("ordered_bell", [](unsigned r) { return to_int(ordered_bell(r)); }, py::arg("r"));
  m.def("count_feasible_exact", [](unsigned p, unsigned r) { return to_int(count_feasible_exact(p, r)); },
        py::arg("p"), py::arg("r"));
  m.def("count_feasible_closed_form", [](unsigned p, unsigned r) { return to_int(count_feasible_closed_form(p, r)); },
        py::arg("p"), py::arg("r"));

  m.def(
      "compare",
      [](const std::vector<Label> &a, const std::vector<Label> &b, const std::optional<std::vector<Volume>> &volumes,
         Volume tau) {
        const std::size_t n = a.size();
        const ComparisonReport r =
            compare_assignments(make_assignment(a, n), make_assignment(b, n), make_volumes(volumes, n), tau);
        py::dict d;
        d["jaccard"] = r.jaccard;
        d["pairs_both"] = r.pairs.both;
        d["pairs_only_a"] = r.pairs.only_a;
        d["pairs_only_b"] = r.pairs.only_b;
        d["communities_a"] = r.communities_a;
        d["communities_b"] = r.communities_b;
        d["volumes_a"] = r.volumes_a.totals;
        d["volumes_b"] = r.volumes_b.totals;
        d["fanout_violating"] = nan_to_none(r.fanout_violating);
        d["fanout_feasible"] = nan_to_none(r.fanout_feasible);
        std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> overlap;
        for (const OverlapEdge &e : r.overlap) {
          overlap.emplace_back(e.a_community, e.b_community, e.shared);
        }
        d["overlap"] = overlap;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("volumes") = py::none(), py::arg("tau") = 0);

  m.def(
      "generate",
      [](const std::string &spec_json) {
        const PlantedInstance inst = generate(cli::parse_planted_spec(spec_json));
        std::vector<EdgeTuple> edges;
        for (const auto &e : inst.edges) {
          edges.emplace_back(e.u, e.v, e.weight);
        }
        const auto f = inst.volumes.values();
        const auto truth = inst.ground_truth.labels();
        py::dict d;
        d["graph"] = inst.graph;
        d["edges"] = edges;
        d["volumes"] = std::vector<Volume>(f.begin(), f.end());
        d["ground_truth"] = std::vector<Label>(truth.begin(), truth.end());
        return d;
      },
      py::arg("spec_json"));
}
