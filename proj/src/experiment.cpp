#include "pref/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "pref/baseline.hpp"
#include "pref/components.hpp"
#include "pref/rng.hpp"

namespace pref {
namespace {

// Stream keys for derive_seed.
constexpr std::uint64_t kAefStream = 0xaef;
constexpr std::uint64_t kShuffleStream = 0x5eed;
constexpr std::uint64_t kDirectionalStream = 1;
constexpr std::uint64_t kLocalizeStream = 2;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, bool>) return *v ? "1" : "0";
  else if constexpr (std::is_floating_point_v<T>) return num(*v);
  else return std::to_string(*v);
}

struct GridPoint {
  std::size_t q_index;
  double beta;
  double epsilon;
};

bool in_sorted(const std::vector<NodeId>& set, NodeId v) { return std::binary_search(set.begin(), set.end(), v); }

void check_unit(const std::vector<double>& grid, const char* name, bool open_low) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  for (double x : grid) {
    if (x < 0.0 || x > 1.0 || (open_low && x == 0.0)) {
      throw std::invalid_argument(std::string(name) + " value " + num(x) + " is outside its range");
    }
  }
}

}  // namespace

void ExperimentSpec::validate() const {
  check_unit(q_grid, "q", false);
  check_unit(rd_grid, "R_d", false);
  check_unit(beta_grid, "beta", false);
  check_unit(epsilon_grid, "epsilon", true);
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  if (localize.samples < 1) throw std::invalid_argument("walk sample count must be >= 1");
  if (strategy == ObserverStrategy::External && sequence_path.empty()) {
    throw std::invalid_argument("external strategy needs a sequence file");
  }
  for (double b : beta_grid) DiffusionModel{model, std::min(beta_min, b), b, gamma}.validate();
}

NodeSequence observer_sequence(const LabeledGraph& g, const ExperimentSpec& spec) {
  const std::size_t n = g.graph.num_nodes();
  switch (spec.strategy) {
    case ObserverStrategy::PrEF: {
      AEFParams params = standard_preset(n, derive_seed(spec.seed, {kAefStream}));
      if (spec.aef_epochs) params.epochs = *spec.aef_epochs;
      if (spec.aef_max_block) params.max_block = *spec.aef_max_block;
      params.delta = spec.delta;
      const auto seed = params.rr.seed;
      params.rr = spec.rr;
      params.rr.seed = seed;
      return aef_optimize(g.graph, params);
    }
    case ObserverStrategy::Hubs: {
      auto seq = hub_sequence(g.graph);
      seq.fitness = evaluate_sequence(g.graph, seq.order, spec.delta);
      return seq;
    }
    case ObserverStrategy::Random: {
      NodeSequence seq{std::vector<NodeId>(n), std::nullopt};
      std::iota(seq.order.begin(), seq.order.end(), NodeId{0});
      Rng rng(derive_seed(spec.seed, {kShuffleStream}));
      std::shuffle(seq.order.begin(), seq.order.end(), rng);
      seq.fitness = evaluate_sequence(g.graph, seq.order, spec.delta);
      return seq;
    }
    case ObserverStrategy::External: {
      auto file = load_sequence(spec.sequence_path, g);
      NodeSequence seq{std::move(file.order), std::nullopt};
      seq.fitness = evaluate_sequence(g.graph, seq.order, spec.delta);
      return seq;
    }
  }
  throw std::invalid_argument("unknown observer strategy");
}

ExperimentResult run_experiment(const LabeledGraph& g, const ExperimentSpec& spec) {
  spec.validate();
  return run_experiment(g, spec, observer_sequence(g, spec));
}

ExperimentResult run_experiment(const LabeledGraph& g, const ExperimentSpec& spec, NodeSequence sequence) {
  spec.validate();
  const Graph& graph = g.graph;
  const std::size_t n = graph.num_nodes();
  require_permutation(sequence.order, n);

  // Observer set and non-observer components per q.
  struct ObserverLayer {
    std::vector<NodeId> prefix;  // sequence order
    std::vector<NodeId> sorted;
    ComponentLabels components;
  };
  std::vector<ObserverLayer> layers;
  for (double q : spec.q_grid) {
    ObserverLayer layer;
    const auto count = std::min(n, static_cast<std::size_t>(std::floor(static_cast<double>(n) * q + 0.5)));
    layer.prefix.assign(sequence.order.begin(), sequence.order.begin() + static_cast<std::ptrdiff_t>(count));
    layer.sorted = layer.prefix;
    std::sort(layer.sorted.begin(), layer.sorted.end());
    auto view = components(graph, [&](NodeId v) { return !in_sorted(layer.sorted, v); });
    layer.components = view.labels();
    layers.push_back(std::move(layer));
  }

  std::vector<GridPoint> points;
  for (std::size_t qi = 0; qi < spec.q_grid.size(); ++qi) {
    for (double beta : spec.beta_grid) {
      for (double eps : spec.epsilon_grid) points.push_back({qi, beta, eps});
    }
  }

  const std::size_t per_trial = spec.rd_grid.size();
  const std::size_t tasks = points.size() * spec.trials;
  std::vector<TrialRow> rows(tasks * per_trial);
  std::vector<char> done(tasks, 0);

  auto run_task = [&](std::size_t task) {
    const auto started = std::chrono::steady_clock::now();
    const std::size_t pi = task / spec.trials;
    const std::size_t trial = task % spec.trials;
    const GridPoint& pt = points[pi];
    const ObserverLayer& layer = layers[pt.q_index];
    DiffusionModel model{spec.model, std::min(spec.beta_min, pt.beta), pt.beta, spec.gamma};

    Rng rng(derive_seed(spec.seed, {pi, trial}));
    auto base = ObserverConfig::make(n, layer.sorted, {});
    Sample sample = generate_sample(graph, model, pt.epsilon, base, rng);
    const auto& trace = sample.trace;

    std::vector<NodeId> infected;
    for (NodeId v = 0; v < n; ++v) {
      if (trace.infected(v)) infected.push_back(v);
    }
    std::optional<std::size_t> jordan_depth;
    std::optional<NodeRank> jordan_rank;
    if (spec.jordan == JordanMode::Rank) jordan_depth = jordan_rank_depth(graph, infected, trace.source);
    if (spec.jordan == JordanMode::Matched) jordan_rank = jordan_center(graph, infected);

    for (std::size_t ri = 0; ri < per_trial; ++ri) {
      const double rd = spec.rd_grid[ri];
      const auto d_count = static_cast<std::size_t>(std::floor(rd * static_cast<double>(layer.prefix.size())));
      std::vector<NodeId> directional;
      if (spec.rd_mode == DirectionalMode::Importance) {
        directional.assign(layer.prefix.begin(), layer.prefix.begin() + static_cast<std::ptrdiff_t>(d_count));
      } else {
        Rng pick(derive_seed(spec.seed, {pi, trial, ri, kDirectionalStream}));
        directional = layer.prefix;
        std::shuffle(directional.begin(), directional.end(), pick);
        directional.resize(d_count);
      }
      auto config = ObserverConfig::make(n, layer.sorted, std::move(directional));
      auto readout = read_observers(trace, config);

      Rng walk(derive_seed(spec.seed, {pi, trial, kLocalizeStream}));
      CandidateReport report;
      if (readout.records.empty()) {
        // No observers at all: nothing narrows the candidates.
        report.primary.resize(n);
        std::iota(report.primary.begin(), report.primary.end(), NodeId{0});
        report.final_set = report.primary;
        report.phi = 1.0;
        report.unconstrained = true;
      } else {
        report = localize(graph, layer.components, readout, spec.localize, walk);
      }

      TrialRow& row = rows[task * per_trial + ri];
      row.network = spec.network_id;
      row.strategy = to_string(spec.strategy);
      row.q = spec.q_grid[pt.q_index];
      row.rd = rd;
      row.model = to_string(spec.model);
      row.beta = pt.beta;
      row.epsilon = pt.epsilon;
      row.trial = trial;
      row.source = trace.source;
      row.outbreak = static_cast<double>(infected.size()) / static_cast<double>(n);
      row.retries = sample.retries;
      row.primary_size = report.primary.size();
      row.final_size = report.final_set.size();
      row.phi = report.phi;
      row.source_in_primary = in_sorted(report.primary, trace.source);
      row.source_in_final = in_sorted(report.final_set, trace.source);
      row.estimate = report.estimate;
      if (report.estimate) row.error_distance = hop_distance(graph, *report.estimate, trace.source);
      if (jordan_depth) {
        row.jordan_size = *jordan_depth;
        row.jordan_hit = true;
      } else if (jordan_rank) {
        const auto top = jordan_rank->top(report.final_set.size());
        row.jordan_size = top.size();
        row.jordan_hit = std::find(top.begin(), top.end(), trace.source) != top.end();
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    for (std::size_t ri = 0; ri < per_trial; ++ri) rows[task * per_trial + ri].wall_seconds = secs;
    done[task] = 1;
  };

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      try {
        run_task(task);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };
  const std::size_t workers = std::min(spec.threads, std::max<std::size_t>(tasks, 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentResult result;
  result.sequence = std::move(sequence);
  if (failure) {
    for (std::size_t task = 0; task < tasks; ++task) {
      if (!done[task]) continue;
      for (std::size_t ri = 0; ri < per_trial; ++ri) result.rows.push_back(rows[task * per_trial + ri]);
    }
    std::string what = "experiment failed";
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      what += ": ";
      what += e.what();
    } catch (...) {
    }
    throw ExperimentFailure(what, std::move(result));
  }
  result.rows = std::move(rows);

  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    for (std::size_t ri = 0; ri < per_trial; ++ri) {
      AggregateRow agg;
      agg.q = spec.q_grid[points[pi].q_index];
      agg.rd = spec.rd_grid[ri];
      agg.beta = points[pi].beta;
      agg.epsilon = points[pi].epsilon;
      agg.trials = spec.trials;
      double sum = 0.0, sum_sq = 0.0, primary = 0.0, sound = 0.0, jordan = 0.0;
      bool have_jordan = false;
      for (std::size_t t = 0; t < spec.trials; ++t) {
        const TrialRow& r = result.rows[(pi * spec.trials + t) * per_trial + ri];
        sum += r.phi;
        sum_sq += r.phi * r.phi;
        primary += static_cast<double>(r.primary_size);
        sound += r.source_in_primary ? 1.0 : 0.0;
        if (r.jordan_size) {
          have_jordan = true;
          jordan += static_cast<double>(*r.jordan_size) / static_cast<double>(n);
        }
      }
      const auto count = static_cast<double>(spec.trials);
      agg.mean_phi = sum / count;
      if (spec.trials > 1) {
        const double var = std::max(0.0, (sum_sq - count * agg.mean_phi * agg.mean_phi) / (count - 1.0));
        agg.ci95_phi = 1.96 * std::sqrt(var / count);
      }
      agg.mean_primary = primary / count;
      agg.soundness = sound / count;
      if (have_jordan) agg.mean_phi_jordan = jordan / count;
      result.aggregates.push_back(agg);
    }
  }
  return result;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "network",      "strategy",          "q",               "rd",       "model",          "beta",
      "epsilon",      "trial",             "source",          "outbreak", "retries",        "primary_size",
      "final_size",   "phi",               "source_in_primary", "source_in_final", "estimate", "error_distance",
      "jordan_size",  "phi_jordan",        "jordan_hit"};
  return cols;
}

void write_csv(std::ostream& out, const ExperimentResult& result, const LabeledGraph& g) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  const auto n = static_cast<double>(g.graph.num_nodes());
  for (const auto& r : result.rows) {
    out << r.network << ',' << r.strategy << ',' << num(r.q) << ',' << num(r.rd) << ',' << r.model << ','
        << num(r.beta) << ',' << num(r.epsilon) << ',' << r.trial << ',' << g.labels[r.source] << ','
        << num(r.outbreak) << ',' << r.retries << ',' << r.primary_size << ',' << r.final_size << ',' << num(r.phi)
        << ',' << (r.source_in_primary ? 1 : 0) << ',' << (r.source_in_final ? 1 : 0) << ','
        << (r.estimate ? g.labels[*r.estimate] : std::string()) << ',' << opt(r.error_distance) << ','
        << opt(r.jordan_size) << ','
        << (r.jordan_size ? num(static_cast<double>(*r.jordan_size) / n) : std::string()) << ','
        << opt(r.jordan_hit) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ExperimentResult& result) {
  out << "q,rd,beta,epsilon,trials,mean_phi,ci95_phi,mean_primary,soundness,mean_phi_jordan\n";
  for (const auto& a : result.aggregates) {
    out << num(a.q) << ',' << num(a.rd) << ',' << num(a.beta) << ',' << num(a.epsilon) << ',' << a.trials << ','
        << num(a.mean_phi) << ',' << num(a.ci95_phi) << ',' << num(a.mean_primary) << ',' << num(a.soundness) << ','
        << opt(a.mean_phi_jordan) << '\n';
  }
}

void write_timing_csv(std::ostream& out, const ExperimentResult& result) {
  out << "q,rd,beta,epsilon,trial,wall_seconds\n";
  for (const auto& r : result.rows) {
    out << num(r.q) << ',' << num(r.rd) << ',' << num(r.beta) << ',' << num(r.epsilon) << ',' << r.trial << ','
        << num(r.wall_seconds) << '\n';
  }
}

nlohmann::json to_json(const ExperimentResult& result, const LabeledGraph& g) {
  nlohmann::json rows = nlohmann::json::array();
  const auto n = static_cast<double>(g.graph.num_nodes());
  auto nullable = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  for (const auto& r : result.rows) {
    rows.push_back({{"network", r.network},
                    {"strategy", r.strategy},
                    {"q", r.q},
                    {"rd", r.rd},
                    {"model", r.model},
                    {"beta", r.beta},
                    {"epsilon", r.epsilon},
                    {"trial", r.trial},
                    {"source", g.labels[r.source]},
                    {"outbreak", r.outbreak},
                    {"retries", r.retries},
                    {"primary_size", r.primary_size},
                    {"final_size", r.final_size},
                    {"phi", r.phi},
                    {"source_in_primary", r.source_in_primary},
                    {"source_in_final", r.source_in_final},
                    {"estimate", r.estimate ? nlohmann::json(g.labels[*r.estimate]) : nlohmann::json(nullptr)},
                    {"error_distance", nullable(r.error_distance)},
                    {"jordan_size", nullable(r.jordan_size)},
                    {"phi_jordan", r.jordan_size ? nlohmann::json(static_cast<double>(*r.jordan_size) / n)
                                                 : nlohmann::json(nullptr)},
                    {"jordan_hit", nullable(r.jordan_hit)}});
  }
  nlohmann::json aggregates = nlohmann::json::array();
  for (const auto& a : result.aggregates) {
    aggregates.push_back({{"q", a.q},
                          {"rd", a.rd},
                          {"beta", a.beta},
                          {"epsilon", a.epsilon},
                          {"trials", a.trials},
                          {"mean_phi", a.mean_phi},
                          {"ci95_phi", a.ci95_phi},
                          {"mean_primary", a.mean_primary},
                          {"soundness", a.soundness},
                          {"mean_phi_jordan", nullable(a.mean_phi_jordan)}});
  }
  nlohmann::json seq = {{"length", result.sequence.order.size()}};
  if (result.sequence.fitness) {
    seq["F"] = result.sequence.fitness->f;
    seq["q_c"] = nullable(result.sequence.fitness->q_c);
  }
  return {{"rows", std::move(rows)}, {"aggregates", std::move(aggregates)}, {"sequence", std::move(seq)}};
}

ObserverStrategy parse_strategy(const std::string& name) {
  if (name == "pref") return ObserverStrategy::PrEF;
  if (name == "hubs") return ObserverStrategy::Hubs;
  if (name == "random") return ObserverStrategy::Random;
  if (name == "external" || name == "external-sequence") return ObserverStrategy::External;
  throw std::invalid_argument("unknown observer strategy '" + name + "' (expected pref, hubs, random, external)");
}

std::string to_string(ObserverStrategy strategy) {
  switch (strategy) {
    case ObserverStrategy::PrEF:
      return "pref";
    case ObserverStrategy::Hubs:
      return "hubs";
    case ObserverStrategy::Random:
      return "random";
    case ObserverStrategy::External:
      return "external";
  }
  return "pref";
}

DirectionalMode parse_directional_mode(const std::string& name) {
  if (name == "random") return DirectionalMode::Random;
  if (name == "importance") return DirectionalMode::Importance;
  throw std::invalid_argument("unknown directional mode '" + name + "' (expected random or importance)");
}

JordanMode parse_jordan_mode(const std::string& name) {
  if (name == "off" || name == "none") return JordanMode::Off;
  if (name == "rank") return JordanMode::Rank;
  if (name == "matched") return JordanMode::Matched;
  throw std::invalid_argument("unknown Jordan mode '" + name + "' (expected off, rank or matched)");
}

}  // namespace pref
