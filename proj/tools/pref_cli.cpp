// pref_cli: observer placement, diffusion simulation and source localization.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "pref/baseline.hpp"
#include "pref/components.hpp"
#include "pref/diffusion.hpp"
#include "pref/experiment.hpp"
#include "pref/generators.hpp"
#include "pref/immunize.hpp"
#include "pref/io.hpp"
#include "pref/localize.hpp"
#include "pref/percolation.hpp"

using namespace pref;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string format = "csv";
};

// A network from an edge list, or generated on the fly.
struct NetworkOptions {
  std::string path;
  std::string model = "er";
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double mean_degree = 0.0;
  double exponent = 3.0;
  std::size_t min_degree = 2;

  void attach(CLI::App* cmd) {
    cmd->add_option("--network", path, "Edge-list file");
    cmd->add_option("--gen-model", model, "Generator when no file is given (er, sf)");
    cmd->add_option("--nodes", nodes, "Generated node count");
    cmd->add_option("--edges", edges, "Generated edge count (er)");
    cmd->add_option("--mean-degree", mean_degree, "Target mean degree (sf; er when --edges is absent)");
    cmd->add_option("--exponent", exponent, "Power-law exponent (sf)");
    cmd->add_option("--min-degree", min_degree, "Minimum degree (sf)");
  }

  GenSpec spec(std::uint64_t seed) const {
    GenSpec s;
    s.model = parse_graph_model(model);
    s.nodes = nodes;
    s.edges = edges;
    if (s.model == GraphModel::ErdosRenyi && edges == 0 && mean_degree > 0.0) {
      s.edges = static_cast<std::size_t>(mean_degree * static_cast<double>(nodes) / 2.0 + 0.5);
    }
    if (mean_degree > 0.0) s.mean_degree = mean_degree;
    s.exponent = exponent;
    s.min_degree = min_degree;
    s.seed = seed;
    return s;
  }

  std::string id() const {
    if (!path.empty()) return path;
    return model + "-" + std::to_string(nodes);
  }

  LabeledGraph load(std::uint64_t seed) const {
    if (!path.empty()) {
      auto g = load_edge_list(path);
      const auto& stats = g.graph.build_stats();
      if (stats.self_loops || stats.duplicate_edges) {
        std::cerr << "note: dropped " << stats.self_loops << " self-loops and " << stats.duplicate_edges
                  << " duplicate edges\n";
      }
      return g;
    }
    if (nodes == 0) throw CLI::ValidationError("--network", "give an edge-list file or --nodes for a generated graph");
    auto gen = generate(spec(seed));
    return LabeledGraph::with_numeric_labels(std::move(gen.graph));
  }
};

std::ostream& output(const std::string& path, std::unique_ptr<std::ofstream>& holder) {
  if (path.empty() || path == "-") return std::cout;
  holder = std::make_unique<std::ofstream>(path);
  if (!*holder) throw std::runtime_error("cannot open '" + path + "' for writing");
  return *holder;
}

void add_rr_options(CLI::App* cmd, RRParams& rr, std::string& xi) {
  cmd->add_option("--draws", rr.max_draws, "Max candidate draws per position")->check(CLI::PositiveNumber);
  cmd->add_option("--window", rr.max_window, "Max window fraction")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--rounds", rr.rounds, "RR rounds per block")->check(CLI::PositiveNumber);
  cmd->add_option("--xi", xi, "Component cost aggregation (sum, product)");
}

std::vector<NodeId> observer_prefix(const LabeledGraph& g, const std::string& sequence_path, double q) {
  auto file = load_sequence(sequence_path, g);
  const std::size_t n = g.graph.num_nodes();
  const auto count = std::min(n, static_cast<std::size_t>(static_cast<double>(n) * q + 0.5));
  return {file.order.begin(), file.order.begin() + static_cast<std::ptrdiff_t>(count)};
}

void print_fitness(std::ostream& out, const SequenceFitness& fit, const std::string& format) {
  if (format == "json") {
    nlohmann::json j{{"F", fit.f}, {"q_c", fit.q_c ? nlohmann::json(*fit.q_c) : nlohmann::json(nullptr)}};
    out << j.dump(2) << '\n';
  } else {
    out << "F,q_c\n" << fit.f << ',' << (fit.q_c ? std::to_string(*fit.q_c) : "") << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Percolation-based observer placement and diffusion source localization"};
  app.set_config("--config", "", "TOML or INI configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "Master RNG seed");
  app.add_option("--threads", globals.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic network as an edge list");
  NetworkOptions gen_net;
  std::string gen_out;
  gen_cmd->add_option("--model", gen_net.model, "er or sf");
  gen_cmd->add_option("--nodes", gen_net.nodes, "Node count")->required();
  gen_cmd->add_option("--edges", gen_net.edges, "Edge count (er)");
  gen_cmd->add_option("--mean-degree", gen_net.mean_degree, "Mean degree");
  gen_cmd->add_option("--exponent", gen_net.exponent, "Power-law exponent (sf)");
  gen_cmd->add_option("--min-degree", gen_net.min_degree, "Minimum degree (sf)");
  gen_cmd->add_option("-o,--output", gen_out, "Output path (stdout when omitted)");

  // optimize
  auto* opt_cmd = app.add_subcommand("optimize", "Optimize an observer (removal) sequence");
  NetworkOptions opt_net;
  opt_net.attach(opt_cmd);
  std::string opt_out, opt_objective = "qc", opt_xi = "sum", opt_strategy = "pref";
  std::size_t opt_epochs = 0, opt_min_block = 1, opt_max_block = 0;
  double opt_delta = 0.005;
  RRParams opt_rr;
  opt_cmd->add_option("--strategy", opt_strategy, "pref, hubs or random");
  opt_cmd->add_option("--objective", opt_objective, "qc or F");
  opt_cmd->add_option("--epochs", opt_epochs, "Partition epochs (size-based preset when 0)");
  opt_cmd->add_option("--min-block", opt_min_block, "Smallest block length")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--max-block", opt_max_block, "Largest block length (0.1 n when 0)");
  opt_cmd->add_option("--delta", opt_delta, "Target LCC fraction")->check(CLI::Range(0.0, 1.0));
  add_rr_options(opt_cmd, opt_rr, opt_xi);
  opt_cmd->add_option("-o,--output", opt_out, "Sequence file to write");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Run one diffusion and write its trace or observer readout");
  NetworkOptions sim_net;
  sim_net.attach(sim_cmd);
  std::string sim_model = "sir1", sim_source, sim_sequence, sim_out, sim_readout_out;
  double sim_beta = 0.5, sim_beta_min = 0.0, sim_gamma = 0.1, sim_epsilon = 0.1, sim_q = 0.25, sim_rd = 0.0;
  sim_cmd->add_option("--model", sim_model, "sir1, sir2 (SI) or sir3 (IC)");
  sim_cmd->add_option("--beta", sim_beta, "Infection probability (upper bound for sir2/sir3)");
  sim_cmd->add_option("--beta-min", sim_beta_min, "Lower bound of the edge probability (sir2/sir3)");
  sim_cmd->add_option("--gamma", sim_gamma, "Recovery probability (sir1)");
  sim_cmd->add_option("--epsilon", sim_epsilon, "Outbreak fraction at which to stop");
  sim_cmd->add_option("--source", sim_source, "Source label (uniformly random when omitted)");
  sim_cmd->add_option("--sequence", sim_sequence, "Observer sequence file");
  sim_cmd->add_option("--q", sim_q, "Observer fraction taken from the sequence");
  sim_cmd->add_option("--rd", sim_rd, "Fraction of observers that record their infector");
  sim_cmd->add_option("-o,--output", sim_out, "Trace output");
  sim_cmd->add_option("--readout", sim_readout_out, "Observer readout JSON output");

  // localize
  auto* loc_cmd = app.add_subcommand("localize", "Build the candidate set for one observer readout");
  NetworkOptions loc_net;
  loc_net.attach(loc_cmd);
  std::string loc_sequence, loc_readout, loc_out;
  double loc_q = 0.25;
  LocalizeParams loc_params;
  loc_cmd->add_option("--sequence", loc_sequence, "Observer sequence file")->required();
  loc_cmd->add_option("--q", loc_q, "Observer fraction taken from the sequence");
  loc_cmd->add_option("--readout", loc_readout, "Observer readout JSON")->required();
  loc_cmd->add_option("--max-offset", loc_params.max_offset, "Largest random walk-length offset");
  loc_cmd->add_option("--layers", loc_params.layers, "Hop radius around the estimate");
  loc_cmd->add_option("--samples", loc_params.samples, "Reverse walks")->check(CLI::PositiveNumber);
  loc_cmd->add_option("-o,--output", loc_out, "Report output");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Run a full localization experiment");
  NetworkOptions eval_net;
  eval_net.attach(eval_cmd);
  ExperimentSpec spec;
  std::string eval_strategy = "pref", eval_rd_mode = "random", eval_model = "sir1", eval_jordan = "off";
  std::string eval_xi = "sum", eval_out, eval_summary, eval_timing, eval_sequence_out, eval_id;
  std::size_t eval_epochs = 0, eval_max_block = 0;
  eval_cmd->add_option("--id", eval_id, "Network id written to every row");
  eval_cmd->add_option("--strategy", eval_strategy, "pref, hubs, random or external");
  eval_cmd->add_option("--sequence", spec.sequence_path, "Sequence file (external strategy)");
  eval_cmd->add_option("--epochs", eval_epochs, "AEF epochs (size-based preset when 0)");
  eval_cmd->add_option("--max-block", eval_max_block, "AEF largest block (0.1 n when 0)");
  eval_cmd->add_option("--delta", spec.delta, "Target LCC fraction");
  add_rr_options(eval_cmd, spec.rr, eval_xi);
  eval_cmd->add_option("--q", spec.q_grid, "Observer fractions")->delimiter(',');
  eval_cmd->add_option("--rd", spec.rd_grid, "Directional observer rates")->delimiter(',');
  eval_cmd->add_option("--rd-mode", eval_rd_mode, "random or importance");
  eval_cmd->add_option("--model", eval_model, "sir1, sir2 or sir3");
  eval_cmd->add_option("--beta", spec.beta_grid, "Infection probabilities")->delimiter(',');
  eval_cmd->add_option("--beta-min", spec.beta_min, "Lower edge probability (sir2/sir3)");
  eval_cmd->add_option("--gamma", spec.gamma, "Recovery probability (sir1)");
  eval_cmd->add_option("--epsilon", spec.epsilon_grid, "Outbreak fractions")->delimiter(',');
  eval_cmd->add_option("--max-offset", spec.localize.max_offset, "Largest random walk-length offset");
  eval_cmd->add_option("--layers", spec.localize.layers, "Hop radius around the estimate");
  eval_cmd->add_option("--samples", spec.localize.samples, "Reverse walks per localization");
  eval_cmd->add_option("--jordan", eval_jordan, "Jordan-center baseline: off, rank or matched");
  eval_cmd->add_option("--trials", spec.trials, "Trials per grid point")->check(CLI::PositiveNumber);
  eval_cmd->add_option("-o,--output", eval_out, "Per-trial results");
  eval_cmd->add_option("--summary", eval_summary, "Aggregate CSV");
  eval_cmd->add_option("--timing", eval_timing, "Wall-time CSV");
  eval_cmd->add_option("--save-sequence", eval_sequence_out, "Write the observer sequence used");

  // thresholds
  auto* thr_cmd = app.add_subcommand("thresholds", "Analytic percolation thresholds");
  double thr_mean = 0.0, thr_second = 0.0;
  std::string thr_network;
  std::vector<double> thr_exponents{2.2, 2.5, 2.8};
  std::vector<double> thr_kmins{1, 2, 3};
  thr_cmd->add_option("--mean-degree", thr_mean, "<k>; the ER value <k^2> = <k>^2 + <k> is assumed without --second-moment");
  thr_cmd->add_option("--second-moment", thr_second, "<k^2>");
  thr_cmd->add_option("--network", thr_network, "Take the moments from an edge list");
  thr_cmd->add_option("--exponents", thr_exponents, "Exponents for the hub-removal table")->delimiter(',');
  thr_cmd->add_option("--kmins", thr_kmins, "Minimum degrees for the hub-removal table")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::unique_ptr<std::ofstream> holder;
    const std::string& fmt = globals.format;

    if (*gen_cmd) {
      GenSpec s = gen_net.spec(globals.seed);
      auto result = generate(s);
      auto g = LabeledGraph::with_numeric_labels(std::move(result.graph));
      write_edge_list(output(gen_out, holder), g);
      if (result.report.parity_fixed_node) {
        std::cerr << "note: odd stub total, degree of node " << *result.report.parity_fixed_node << " raised by one\n";
      }
      if (result.report.dropped_defects) {
        std::cerr << "note: dropped " << result.report.dropped_defects << " self-loops/multi-edges\n";
      }
      return 0;
    }

    if (*opt_cmd) {
      auto g = opt_net.load(globals.seed);
      NodeSequence seq;
      std::map<std::string, std::string> header{{"strategy", opt_strategy}, {"seed", std::to_string(globals.seed)}};
      if (opt_strategy == "pref") {
        AEFParams params = standard_preset(g.graph.num_nodes(), globals.seed);
        if (opt_epochs) params.epochs = opt_epochs;
        params.min_block = opt_min_block;
        if (opt_max_block) params.max_block = opt_max_block;
        params.objective = parse_objective(opt_objective);
        params.delta = opt_delta;
        const auto seed = params.rr.seed;
        params.rr = opt_rr;
        params.rr.seed = seed;
        params.rr.xi = parse_xi_mode(opt_xi);
        seq = aef_optimize(g.graph, params);
        header["epochs"] = std::to_string(params.epochs);
        header["objective"] = opt_objective;
        header["draws"] = std::to_string(params.rr.max_draws);
        header["window"] = std::to_string(params.rr.max_window);
        header["rounds"] = std::to_string(params.rr.rounds);
        header["xi"] = opt_xi;
      } else {
        ExperimentSpec s;
        s.strategy = parse_strategy(opt_strategy);
        s.seed = globals.seed;
        s.delta = opt_delta;
        seq = observer_sequence(g, s);
      }
      auto fit = evaluate_sequence(g.graph, seq.order, opt_delta);
      header["delta"] = std::to_string(opt_delta);
      header["F"] = std::to_string(fit.f);
      header["q_c"] = fit.q_c ? std::to_string(*fit.q_c) : "";
      if (!opt_out.empty()) save_sequence(opt_out, g, seq.order, header);
      print_fitness(std::cout, fit, fmt);
      return 0;
    }

    if (*sim_cmd) {
      auto g = sim_net.load(globals.seed);
      const auto kind = parse_diffusion_kind(sim_model);
      DiffusionModel model{kind, std::min(sim_beta_min, sim_beta), sim_beta,
                           kind == DiffusionKind::SIR ? sim_gamma : (kind == DiffusionKind::SI ? 0.0 : 1.0)};
      model.validate();
      Rng rng(derive_seed(globals.seed, {0}));
      std::vector<NodeId> observers;
      if (!sim_sequence.empty()) observers = observer_prefix(g, sim_sequence, sim_q);
      std::vector<NodeId> directional(observers.begin(),
                                      observers.begin() + static_cast<std::ptrdiff_t>(sim_rd * observers.size()));
      auto config = ObserverConfig::make(g.graph.num_nodes(), observers, directional);
      DiffusionTrace trace;
      ObserverReadout readout;
      if (sim_source.empty()) {
        auto sample = generate_sample(g.graph, model, sim_epsilon, config, rng);
        if (sample.retries) std::cerr << "note: resampled " << sample.retries << " died-out diffusions\n";
        trace = std::move(sample.trace);
        readout = std::move(sample.readout);
      } else {
        trace = simulate(g.graph, model, g.id_of(sim_source), StopRule{sim_epsilon, std::nullopt}, rng);
        readout = read_observers(trace, config);
      }
      auto& out = output(sim_out, holder);
      if (fmt == "json") {
        out << to_json(trace, g).dump(2) << '\n';
      } else {
        out << "node,time,infector\n";
        for (NodeId v = 0; v < g.graph.num_nodes(); ++v) {
          if (!trace.infected(v)) continue;
          out << g.labels[v] << ',' << trace.infection_time[v] << ','
              << (trace.infector[v] == kNoNode ? std::string() : g.labels[trace.infector[v]]) << '\n';
        }
      }
      if (!sim_readout_out.empty()) {
        std::ofstream r(sim_readout_out);
        if (!r) throw std::runtime_error("cannot open '" + sim_readout_out + "' for writing");
        r << to_json(readout, g).dump(2) << '\n';
      }
      return 0;
    }

    if (*loc_cmd) {
      auto g = loc_net.load(globals.seed);
      auto observers = observer_prefix(g, loc_sequence, loc_q);
      std::sort(observers.begin(), observers.end());
      std::ifstream in(loc_readout);
      if (!in) throw std::runtime_error("cannot open '" + loc_readout + "' for reading");
      auto readout = readout_from_json(nlohmann::json::parse(in), g);
      for (const auto& rec : readout.records) {
        if (!std::binary_search(observers.begin(), observers.end(), rec.node)) {
          throw std::invalid_argument("readout node '" + g.labels[rec.node] + "' is not an observer at this q");
        }
      }
      auto view = components(g.graph, [&](NodeId v) { return !std::binary_search(observers.begin(), observers.end(), v); });
      Rng rng(derive_seed(globals.seed, {0}));
      auto report = localize(g.graph, view.labels(), readout, loc_params, rng);
      auto& out = output(loc_out, holder);
      if (fmt == "json") {
        out << to_json(report, g).dump(2) << '\n';
      } else {
        out << "node,primary,final\n";
        for (NodeId v : report.primary) {
          const bool fin = std::binary_search(report.final_set.begin(), report.final_set.end(), v);
          out << g.labels[v] << ",1," << (fin ? 1 : 0) << '\n';
        }
      }
      if (report.unconstrained) std::cerr << "note: no observer was infected; every node remains a candidate\n";
      return 0;
    }

    if (*eval_cmd) {
      auto g = eval_net.load(globals.seed);
      spec.network_id = eval_id.empty() ? eval_net.id() : eval_id;
      spec.strategy = parse_strategy(eval_strategy);
      if (eval_epochs) spec.aef_epochs = eval_epochs;
      if (eval_max_block) spec.aef_max_block = eval_max_block;
      spec.rr.xi = parse_xi_mode(eval_xi);
      spec.rd_mode = parse_directional_mode(eval_rd_mode);
      spec.model = parse_diffusion_kind(eval_model);
      if (spec.model == DiffusionKind::SI) spec.gamma = 0.0;
      if (spec.model == DiffusionKind::IC) spec.gamma = 1.0;
      spec.jordan = parse_jordan_mode(eval_jordan);
      spec.seed = globals.seed;
      spec.threads = globals.threads;
      spec.validate();

      ExperimentResult result;
      int status = 0;
      try {
        result = run_experiment(g, spec);
      } catch (const ExperimentFailure& e) {
        std::cerr << "error: " << e.what() << " (" << e.partial().rows.size() << " rows kept)\n";
        result = e.partial();
        status = 2;
      }
      auto& out = output(eval_out, holder);
      if (fmt == "json") {
        out << to_json(result, g).dump(2) << '\n';
      } else {
        write_csv(out, result, g);
      }
      out.flush();
      if (!eval_summary.empty()) {
        std::ofstream s(eval_summary);
        write_summary_csv(s, result);
      }
      if (!eval_timing.empty()) {
        std::ofstream t(eval_timing);
        write_timing_csv(t, result);
      }
      if (!eval_sequence_out.empty() && !result.sequence.order.empty()) {
        save_sequence(eval_sequence_out, g, result.sequence.order,
                      {{"strategy", eval_strategy}, {"seed", std::to_string(globals.seed)}});
      }
      return status;
    }

    if (*thr_cmd) {
      DegreeMoments m;
      if (!thr_network.empty()) {
        m = DegreeMoments::of(load_edge_list(thr_network).graph);
      } else {
        if (thr_mean <= 0.0) throw CLI::ValidationError("--mean-degree", "give --mean-degree or --network");
        m.mean = thr_mean;
        m.second = thr_second > 0.0 ? thr_second : thr_mean * thr_mean + thr_mean;
      }
      auto random = random_removal_threshold(m);
      nlohmann::json hubs = nlohmann::json::array();
      for (double l : thr_exponents) {
        for (double k : thr_kmins) {
          auto root = hub_removal_threshold(l, k);
          hubs.push_back({{"exponent", l}, {"k_min", k}, {"q_c", root ? nlohmann::json(*root) : nlohmann::json(nullptr)}});
        }
      }
      if (fmt == "json") {
        nlohmann::json j{{"mean_degree", m.mean},
                         {"second_moment", m.second},
                         {"giant_component", molloy_reed(m)},
                         {"random_removal_q_c", random.q_c},
                         {"degenerate", random.degenerate},
                         {"hub_removal", hubs}};
        std::cout << j.dump(2) << '\n';
      } else {
        char buf[128];
        std::cout << "kind,exponent,k_min,q_c\n";
        std::snprintf(buf, sizeof buf, "random,,,%.4f\n", random.q_c);
        std::cout << buf;
        for (const auto& h : hubs) {
          std::snprintf(buf, sizeof buf, "hubs,%g,%g,", h["exponent"].get<double>(), h["k_min"].get<double>());
          std::cout << buf;
          if (!h["q_c"].is_null()) {
            std::snprintf(buf, sizeof buf, "%.6f", h["q_c"].get<double>());
            std::cout << buf;
          }
          std::cout << '\n';
        }
      }
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
