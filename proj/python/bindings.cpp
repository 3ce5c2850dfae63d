#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pref/baseline.hpp"
#include "pref/experiment.hpp"
#include "pref/generators.hpp"
#include "pref/immunize.hpp"
#include "pref/localize.hpp"
#include "pref/percolation.hpp"
#include "pref/sequence.hpp"

namespace py = pybind11;
using namespace pref;

namespace {

py::dict fitness_dict(const SequenceFitness& f) {
  py::dict d;
  d["F"] = f.f;
  d["q_c"] = f.q_c ? py::cast(*f.q_c) : py::none();
  return d;
}

py::list readout_list(const ObserverReadout& readout) {
  py::list out;
  for (const auto& r : readout.records) {
    py::dict d;
    d["node"] = r.node;
    d["time"] = r.time ? py::cast(*r.time) : py::none();
    d["directional"] = r.directional;
    d["infector"] = r.infector ? py::cast(*r.infector) : py::none();
    out.append(d);
  }
  return out;
}

ObserverReadout readout_from(const Graph& g, const py::list& records) {
  ObserverReadout readout;
  readout.num_nodes = g.num_nodes();
  for (const auto& item : records) {
    auto d = item.cast<py::dict>();
    ObserverRecord r;
    r.node = d["node"].cast<NodeId>();
    if (r.node >= g.num_nodes()) throw py::index_error("observer id outside the graph");
    if (d.contains("time") && !d["time"].is_none()) r.time = d["time"].cast<std::uint32_t>();
    if (d.contains("directional")) r.directional = d["directional"].cast<bool>();
    if (d.contains("infector") && !d["infector"].is_none()) r.infector = d["infector"].cast<NodeId>();
    readout.records.push_back(r);
  }
  std::sort(readout.records.begin(), readout.records.end(),
            [](const ObserverRecord& a, const ObserverRecord& b) { return a.node < b.node; });
  return readout;
}

ComponentLabels labels_without(const Graph& g, const std::vector<NodeId>& observers) {
  std::vector<char> removed(g.num_nodes(), 0);
  for (NodeId u : observers) {
    if (u >= g.num_nodes()) throw py::index_error("observer id outside the graph");
    removed[u] = 1;
  }
  return components(g, [&](NodeId v) { return !removed[v]; }).labels();
}

DiffusionModel make_model(const std::string& kind, double beta, double gamma, double beta_min) {
  DiffusionModel model{parse_diffusion_kind(kind), beta_min, beta, gamma};
  if (model.kind == DiffusionKind::SIR) model.beta_min = beta;
  if (model.kind == DiffusionKind::SI) model.gamma = 0.0;
  if (model.kind == DiffusionKind::IC) model.gamma = 1.0;
  model.validate();
  return model;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Observer placement and diffusion-source localization";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::invalid_argument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const std::out_of_range& e) {
      PyErr_SetString(PyExc_IndexError, e.what());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) {
             for (auto [u, v] : edges) {
               if (u >= n || v >= n) throw py::index_error("edge endpoint outside [0, n)");
             }
             return Graph::from_edges(n, edges);
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_nodes", &Graph::num_nodes)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def("degree", &Graph::degree)
      .def("neighbors",
           [](const Graph& g, NodeId v) {
             auto nb = g.neighbors(v);
             return std::vector<NodeId>(nb.begin(), nb.end());
           })
      .def("has_edge", &Graph::has_edge)
      .def("edges", &Graph::edges)
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_nodes()) + " m=" + std::to_string(g.num_edges()) + ">";
      });

  m.def(
      "erdos_renyi",
      [](std::size_t n, std::size_t m_edges, std::uint64_t seed) {
        GenSpec spec;
        spec.nodes = n;
        spec.edges = m_edges;
        spec.seed = seed;
        return generate(spec).graph;
      },
      py::arg("n"), py::arg("m"), py::arg("seed") = 1);
  m.def(
      "scale_free",
      [](std::size_t n, std::optional<double> mean_degree, double exponent, std::size_t min_degree,
         std::uint64_t seed) {
        GenSpec spec;
        spec.model = GraphModel::ConfigurationPowerLaw;
        spec.nodes = n;
        spec.mean_degree = mean_degree;
        spec.exponent = exponent;
        spec.min_degree = min_degree;
        spec.seed = seed;
        return generate(spec).graph;
      },
      py::arg("n"), py::arg("mean_degree") = py::none(), py::arg("exponent") = 3.0, py::arg("min_degree") = 2,
      py::arg("seed") = 1);
  m.def("path", &make_path, py::arg("n"));
  m.def("star", &make_star, py::arg("leaves"));
  m.def("ring", &make_ring, py::arg("n"));
  m.def("grid", &make_grid, py::arg("rows"), py::arg("cols"));

  m.def(
      "removal_profile",
      [](const Graph& g, const std::vector<NodeId>& order) { return removal_profile(g, order); },
      py::arg("graph"), py::arg("order"), "LCC size after removing 0..n nodes of the order.");
  m.def(
      "evaluate_sequence",
      [](const Graph& g, const std::vector<NodeId>& order, std::optional<double> delta) {
        return fitness_dict(evaluate_sequence(g, order, delta));
      },
      py::arg("graph"), py::arg("order"), py::arg("delta") = 0.005);
  m.def(
      "order_parameter",
      [](const Graph& g, const std::vector<NodeId>& order, const std::vector<double>& grid) {
        return order_parameter(g, order, grid).values;
      },
      py::arg("graph"), py::arg("order"), py::arg("grid"));
  m.def(
      "hub_sequence", [](const Graph& g) { return hub_sequence(g).order; }, py::arg("graph"));
  m.def(
      "optimize",
      [](const Graph& g, std::uint64_t seed, std::optional<std::size_t> epochs, std::optional<std::size_t> max_block,
         const std::string& objective, double delta, std::optional<std::vector<NodeId>> initial) {
        auto params = standard_preset(g.num_nodes(), seed);
        if (epochs) params.epochs = *epochs;
        if (max_block) params.max_block = *max_block;
        params.objective = parse_objective(objective);
        params.delta = delta;
        std::optional<NodeSequence> start;
        if (initial) start = NodeSequence{*initial, std::nullopt};
        NodeSequence seq;
        {
          py::gil_scoped_release release;
          seq = aef_optimize(g, params, start);
        }
        py::dict out = fitness_dict(evaluate_sequence(g, seq.order, delta));
        out["order"] = seq.order;
        return out;
      },
      py::arg("graph"), py::arg("seed") = 1, py::arg("epochs") = py::none(), py::arg("max_block") = py::none(),
      py::arg("objective") = "qc", py::arg("delta") = 0.005, py::arg("initial") = py::none(),
      "Evolutionary observer-sequence optimization with the size-based preset.");

  m.def(
      "random_removal_threshold",
      [](double mean, double second) { return random_removal_threshold({mean, second}).q_c; },
      py::arg("mean_degree"), py::arg("second_moment"));
  m.def("hub_removal_threshold", &hub_removal_threshold, py::arg("exponent"), py::arg("k_min"));

  m.def(
      "simulate",
      [](const Graph& g, const std::vector<NodeId>& observers, const std::vector<NodeId>& directional,
         const std::string& model, double beta, double gamma, double beta_min, double epsilon, std::uint64_t seed) {
        auto config = ObserverConfig::make(g.num_nodes(), observers, directional);
        Rng rng(seed);
        auto sample = generate_sample(g, make_model(model, beta, gamma, beta_min), epsilon, config, rng);
        std::vector<std::optional<std::uint32_t>> times(g.num_nodes());
        std::vector<std::optional<NodeId>> infector(g.num_nodes());
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
          if (!sample.trace.infected(v)) continue;
          times[v] = sample.trace.infection_time[v];
          if (sample.trace.infector[v] != kNoNode) infector[v] = sample.trace.infector[v];
        }
        py::dict out;
        out["source"] = sample.trace.source;
        out["times"] = times;
        out["infector"] = infector;
        out["horizon"] = sample.trace.horizon;
        out["retries"] = sample.retries;
        out["exhausted"] = sample.exhausted;
        out["readout"] = readout_list(sample.readout);
        return out;
      },
      py::arg("graph"), py::arg("observers"), py::arg("directional") = std::vector<NodeId>{},
      py::arg("model") = "sir1", py::arg("beta") = 0.5, py::arg("gamma") = 0.1, py::arg("beta_min") = 0.0,
      py::arg("epsilon") = 0.1, py::arg("seed") = 1,
      "Draw one diffusion from a uniform source and read the observers.");

  m.def(
      "localize",
      [](const Graph& g, const std::vector<NodeId>& observers, const py::list& readout, std::size_t layers,
         std::size_t samples, std::uint32_t max_offset, std::uint64_t seed) {
        auto labels = labels_without(g, observers);
        auto parsed = readout_from(g, readout);
        Rng rng(seed);
        auto report = localize(g, labels, parsed, LocalizeParams{max_offset, layers, samples}, rng);
        py::dict out;
        out["earliest"] = report.earliest;
        out["primary"] = report.primary;
        out["interior"] = report.interior;
        out["periphery"] = report.periphery;
        out["estimate"] = report.estimate ? py::cast(*report.estimate) : py::none();
        out["candidates"] = report.final_set;
        out["phi"] = report.phi;
        out["unconstrained"] = report.unconstrained;
        return out;
      },
      py::arg("graph"), py::arg("observers"), py::arg("readout"), py::arg("layers") = 2,
      py::arg("samples") = 100000, py::arg("max_offset") = 3, py::arg("seed") = 1);

  m.def(
      "jordan_center",
      [](const Graph& g, const std::vector<NodeId>& infected) {
        std::vector<NodeId> out;
        for (const auto& [v, score] : jordan_center(g, infected).entries) out.push_back(v);
        return out;
      },
      py::arg("graph"), py::arg("infected"), "Infected nodes ordered by increasing eccentricity.");

  m.def(
      "evaluate",
      [](const Graph& g, const std::string& strategy, const std::vector<double>& q, const std::vector<double>& rd,
         const std::vector<double>& beta, const std::vector<double>& epsilon, double gamma, std::size_t trials,
         std::size_t samples, const std::string& jordan, std::optional<std::size_t> epochs, std::uint64_t seed,
         std::size_t threads) {
        ExperimentSpec spec;
        spec.strategy = parse_strategy(strategy);
        spec.q_grid = q;
        spec.rd_grid = rd;
        spec.beta_grid = beta;
        spec.epsilon_grid = epsilon;
        spec.gamma = gamma;
        spec.trials = trials;
        spec.localize.samples = samples;
        spec.jordan = parse_jordan_mode(jordan);
        spec.aef_epochs = epochs;
        spec.seed = seed;
        spec.threads = threads;
        auto labeled = LabeledGraph::with_numeric_labels(g);
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = run_experiment(labeled, spec);
        }
        py::list rows;
        for (const auto& a : result.aggregates) {
          py::dict d;
          d["q"] = a.q;
          d["rd"] = a.rd;
          d["beta"] = a.beta;
          d["epsilon"] = a.epsilon;
          d["trials"] = a.trials;
          d["mean_phi"] = a.mean_phi;
          d["ci95_phi"] = a.ci95_phi;
          d["mean_primary"] = a.mean_primary;
          d["soundness"] = a.soundness;
          d["mean_phi_jordan"] = a.mean_phi_jordan ? py::cast(*a.mean_phi_jordan) : py::none();
          rows.append(d);
        }
        return rows;
      },
      py::arg("graph"), py::arg("strategy") = "pref", py::arg("q") = std::vector<double>{0.25},
      py::arg("rd") = std::vector<double>{0.0, 1.0}, py::arg("beta") = std::vector<double>{0.5},
      py::arg("epsilon") = std::vector<double>{0.1}, py::arg("gamma") = 0.1, py::arg("trials") = 100,
      py::arg("samples") = 10000, py::arg("jordan") = "off", py::arg("epochs") = py::none(), py::arg("seed") = 1,
      py::arg("threads") = 1, "Aggregate rows of a localization experiment.");
}
