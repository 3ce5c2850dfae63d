#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "../unit/support.hpp"
#include "pref/baseline.hpp"
#include "pref/components.hpp"
#include "pref/experiment.hpp"
#include "pref/immunize.hpp"
#include "pref/localize.hpp"
#include "pref/percolation.hpp"
#include "pref/sequence.hpp"

using namespace pref;

namespace {

constexpr double kDelta = 0.005;

struct Settings {
  std::size_t trials = 1000;
  std::size_t samples = 10000;
  std::size_t stability_trials = 300;
  std::size_t threads = 1;
  std::string cli;
  std::vector<int> only;
};

int failures = 0;

void verdict(int id, bool pass, const std::string& detail) {
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << detail << std::endl;
  if (!pass) ++failures;
}

void note(const std::string& text) { std::cerr << "  " << text << std::endl; }

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

Graph er_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  GenSpec spec;
  spec.nodes = n;
  spec.edges = m;
  spec.seed = seed;
  return generate(spec).graph;
}

Graph sf_graph(std::uint64_t seed) {
  GenSpec spec;
  spec.model = GraphModel::ConfigurationPowerLaw;
  spec.nodes = 10000;
  spec.mean_degree = 4.0;
  spec.exponent = 3.0;
  spec.min_degree = 2;
  spec.seed = seed;
  return generate(spec).graph;
}

double critical_fraction(const Graph& g, const std::vector<NodeId>& order) {
  return *evaluate_sequence(g, order, kDelta).q_c;
}

// Paper-preset AEF run, cached per network name.
class SequenceCache {
 public:
  const NodeSequence& get(const std::string& name, const Graph& g, std::uint64_t seed) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    const auto start = std::chrono::steady_clock::now();
    auto seq = aef_optimize(g, standard_preset(g.num_nodes(), seed));
    seq.fitness = evaluate_sequence(g, seq.order, kDelta);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    note("AEF on " + name + ": q_c=" + fmt(*seq.fitness->q_c) + " F=" + fmt(seq.fitness->f) + " (" +
         fmt(secs, 3) + " s)");
    return cache_.emplace(name, std::move(seq)).first->second;
  }

 private:
  std::map<std::string, NodeSequence> cache_;
};

struct Network {
  std::string name;
  LabeledGraph graph;
  NodeSequence sequence;
};

// ---------------------------------------------------------------------------
// 1 and 4: soundness and direction monotonicity

void soundness_and_direction(const std::vector<Network>& nets, const Settings& s) {
  std::size_t total = 0, sound = 0, traces = 0, monotone = 0, cells = 0, phi_ok = 0;
  std::string worst_cell;
  for (const auto& net : nets) {
    ExperimentSpec spec;
    spec.network_id = net.name;
    spec.strategy = ObserverStrategy::PrEF;
    spec.q_grid = {0.25};
    spec.rd_grid = {0.0, 1.0};
    spec.beta_grid = {0.1, 0.5, 0.9};
    spec.gamma = 0.1;
    spec.epsilon_grid = {0.10};
    spec.localize.samples = s.samples;
    spec.trials = s.trials;
    spec.threads = s.threads;
    spec.seed = 101;
    auto result = run_experiment(net.graph, spec, net.sequence);
    for (const auto& row : result.rows) {
      ++total;
      sound += row.source_in_primary;
    }
    for (std::size_t i = 0; i + 1 < result.rows.size(); i += 2) {
      const auto& r0 = result.rows[i];
      const auto& r1 = result.rows[i + 1];
      if (r0.rd != 0.0 || r1.rd != 1.0 || r0.trial != r1.trial || r0.source != r1.source) {
        throw std::logic_error("unexpected row layout");
      }
      ++traces;
      monotone += r1.primary_size <= r0.primary_size;
    }
    for (std::size_t i = 0; i + 1 < result.aggregates.size(); i += 2) {
      const auto& a0 = result.aggregates[i];
      const auto& a1 = result.aggregates[i + 1];
      ++cells;
      const bool ok = a1.mean_phi <= a0.mean_phi;
      phi_ok += ok;
      note(net.name + " beta=" + fmt(a0.beta) + ": phi(PrEF(0))=" + fmt(a0.mean_phi) + " phi(PrEF(1))=" +
           fmt(a1.mean_phi) + " |Vc'| " + fmt(a0.mean_primary) + " -> " + fmt(a1.mean_primary) +
           " soundness " + fmt(a0.soundness) + "/" + fmt(a1.soundness));
      if (!ok) worst_cell = net.name + " beta=" + fmt(a0.beta);
    }
  }
  verdict(1, total > 0 && sound == total,
          "source in V_c' in " + std::to_string(sound) + "/" + std::to_string(total) +
              " localizations (ER, SF, star; beta in {0.1,0.5,0.9}; " + std::to_string(s.trials) +
              " trials per cell)");
  verdict(4, monotone == traces && phi_ok == cells,
          "|V_c'|(R_d=1) <= |V_c'|(R_d=0) on " + std::to_string(monotone) + "/" + std::to_string(traces) +
              " traces; mean phi non-increasing in " + std::to_string(phi_ok) + "/" + std::to_string(cells) +
              " cells" + (worst_cell.empty() ? "" : " (violated at " + worst_cell + ")"));
}

// ---------------------------------------------------------------------------
// 2: random-removal threshold on ER graphs

void er_threshold() {
  const std::size_t n = 100000;
  bool pass = true;
  std::string detail;
  for (double k : {4.0, 7.0}) {
    std::vector<double> values;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto g = er_graph(n, static_cast<std::size_t>(k * n / 2.0), 1000 + seed);
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(k)}));
      auto order = testing::shuffled_ids(n, rng);
      auto profile = removal_profile(g, order);
      std::size_t j = 0;
      while (static_cast<double>(profile[j]) >= 0.01 * static_cast<double>(n)) ++j;
      values.push_back(static_cast<double>(j) / static_cast<double>(n));
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    const double lo = *std::min_element(values.begin(), values.end());
    const double hi = *std::max_element(values.begin(), values.end());
    const double analytic = 1.0 - 1.0 / k;
    const bool ok = std::abs(mean - analytic) <= 0.03;
    pass = pass && ok;
    detail += "<k>=" + fmt(k, 2) + ": simulated " + fmt(mean) + " [" + fmt(lo) + ", " + fmt(hi) + "] vs " +
              fmt(analytic) + "; ";
  }
  verdict(2, pass, detail + "n=1e5, 20 seeds");
}

// ---------------------------------------------------------------------------
// 3: dismantling quality against Hubs

void dismantling(SequenceCache& cache, const std::vector<LabeledGraph>& er) {
  bool pass = true;
  std::string detail;
  for (std::size_t i = 0; i < er.size(); ++i) {
    const auto& g = er[i].graph;
    const auto& seq = cache.get("er7-" + std::to_string(i + 1), g, i + 1);
    const double aef = *seq.fitness->q_c;
    const double hubs = critical_fraction(g, hub_sequence(g).order);
    const bool ok = aef <= 0.25 && aef < hubs;
    pass = pass && ok;
    detail += "seed " + std::to_string(i + 1) + ": q_c=" + fmt(aef) + " (Hubs " + fmt(hubs) + "); ";
  }
  auto sparse = er_graph(10000, 17500, 1);
  const auto& diag = cache.get("er3.5-1", sparse, 1);
  const double hubs = critical_fraction(sparse, hub_sequence(sparse).order);
  detail += "target <= 0.25 on m=35000; diagnostic m=17500: q_c=" + fmt(*diag.fitness->q_c) + " (Hubs " +
            fmt(hubs) + ")";
  verdict(3, pass, detail);
}

// ---------------------------------------------------------------------------
// 5: stability and the Jordan-center gap

void stability(const Network& sf, const Settings& s) {
  const double q = *evaluate_sequence(sf.graph.graph, sf.sequence.order, kDelta).q_c;
  auto base = [&] {
    ExperimentSpec spec;
    spec.network_id = sf.name;
    spec.strategy = ObserverStrategy::PrEF;
    spec.q_grid = {q};
    spec.rd_grid = {1.0};
    spec.gamma = 0.1;
    spec.localize.samples = s.samples;
    spec.trials = s.stability_trials;
    spec.threads = s.threads;
    spec.seed = 202;
    return spec;
  };
  auto by_beta = base();
  by_beta.beta_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  by_beta.epsilon_grid = {0.10};
  by_beta.jordan = JordanMode::Rank;
  auto beta_result = run_experiment(sf.graph, by_beta, sf.sequence);

  auto by_eps = base();
  by_eps.beta_grid = {0.5};
  by_eps.epsilon_grid = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  auto eps_result = run_experiment(sf.graph, by_eps, sf.sequence);

  auto ratio = [](const std::vector<AggregateRow>& rows) {
    double lo = rows.front().mean_phi, hi = lo;
    for (const auto& r : rows) {
      lo = std::min(lo, r.mean_phi);
      hi = std::max(hi, r.mean_phi);
    }
    return lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  };
  for (const auto& a : beta_result.aggregates) {
    note("SF beta=" + fmt(a.beta) + ": phi(PrEF(1))=" + fmt(a.mean_phi) + " phi(JC)=" + fmt(*a.mean_phi_jordan));
  }
  for (const auto& a : eps_result.aggregates) {
    note("SF epsilon=" + fmt(a.epsilon) + ": phi(PrEF(1))=" + fmt(a.mean_phi));
  }
  const double beta_ratio = ratio(beta_result.aggregates);
  const double eps_ratio = ratio(eps_result.aggregates);
  const auto& low = beta_result.aggregates.front();
  const double gap = *low.mean_phi_jordan / low.mean_phi;
  verdict(5, beta_ratio < 3.0 && eps_ratio < 3.0 && gap >= 10.0,
          "SF q=" + fmt(q) + ": max/min phi over beta " + fmt(beta_ratio) + ", over epsilon " + fmt(eps_ratio) +
              "; at beta=0.1 phi(JC)=" + fmt(*low.mean_phi_jordan) + " vs phi(PrEF(1))=" + fmt(low.mean_phi) +
              " (" + fmt(gap, 3) + "x)");
}

// ---------------------------------------------------------------------------
// 6: oracle equivalences

std::vector<NodeId> brute_boundary(const Graph& g, const std::vector<long>& label, long comp) {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (label[u] >= 0) continue;
    for (NodeId nb : g.neighbors(u)) {
      if (label[nb] == comp) {
        out.push_back(u);
        break;
      }
    }
  }
  return out;
}

std::vector<NodeId> brute_cover(const Graph& g, const std::vector<long>& label, NodeId u) {
  std::vector<long> comps;
  for (NodeId nb : g.neighbors(u)) {
    if (label[nb] >= 0) comps.push_back(label[nb]);
  }
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (label[v] >= 0 && std::count(comps.begin(), comps.end(), label[v])) out.push_back(v);
  }
  return out;
}

void oracles() {
  std::size_t checks = 0, mismatches = 0;
  auto expect = [&](bool ok) {
    ++checks;
    mismatches += !ok;
  };
  Rng rng(606);

  // Union-find against BFS after every activation.
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 120 + static_cast<std::size_t>(rep % 5) * 20;
    auto g = testing::random_graph(n, n + static_cast<std::size_t>(rep) * 2, 700 + rep);
    auto order = testing::shuffled_ids(n, rng);
    ComponentView view(n);
    std::vector<char> active(n, 0);
    for (NodeId v : order) {
      view.activate(g, v);
      active[v] = 1;
      auto bfs = testing::bfs_labels(g, active);
      auto uf = view.labels();
      std::map<NodeId, long> fwd;
      std::map<long, NodeId> back;
      bool same = true;
      std::size_t largest = 0;
      std::map<long, std::size_t> sizes;
      for (NodeId x = 0; x < n; ++x) {
        if ((bfs[x] >= 0) != uf.is_active(x)) same = false;
        if (bfs[x] < 0) continue;
        largest = std::max(largest, ++sizes[bfs[x]]);
        auto [a, ia] = fwd.emplace(uf.label[x], bfs[x]);
        auto [b, ib] = back.emplace(bfs[x], uf.label[x]);
        if (a->second != bfs[x] || b->second != uf.label[x]) same = false;
      }
      expect(same && view.largest_size() == largest && view.num_components() == sizes.size());
    }
  }

  // Boundary, cover, V_c' and O'' against scans.
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 200;
    auto g = testing::random_graph(n, 400, 800 + rep);
    auto order = testing::shuffled_ids(n, rng);
    std::vector<NodeId> observers(order.begin(), order.begin() + 40 + rep);
    std::vector<char> active(n, 1);
    for (NodeId u : observers) active[u] = 0;
    auto view = components(g, [&](NodeId v) { return active[v] != 0; });
    auto label = testing::bfs_labels(g, active);
    for (NodeId v = 0; v < n; ++v) {
      if (!active[v]) continue;
      expect(boundary(g, view, *view.component_of(v)) == brute_boundary(g, label, label[v]));
    }
    for (NodeId u : observers) expect(cover_nodes(g, view, u) == brute_cover(g, label, u));

    std::vector<NodeId> directional(observers.begin(), observers.begin() + static_cast<std::ptrdiff_t>(rep % 2 ? observers.size() : 0));
    auto config = ObserverConfig::make(n, observers, directional);
    auto sample = generate_sample(g, DiffusionModel::sir(0.5, 0.1), 0.3, config, rng);
    const auto& readout = sample.readout;
    auto labels = view.labels();
    auto primary = primary_candidates(g, labels, readout).nodes;
    auto earliest = earliest_observers(readout);
    std::vector<NodeId> brute_primary;
    if (earliest.empty()) {
      brute_primary.resize(n);
      std::iota(brute_primary.begin(), brute_primary.end(), NodeId{0});
    } else {
      for (NodeId x = 0; x < n; ++x) {
        bool in_all = true;
        for (NodeId u : earliest) {
          const auto* rec = readout.find(u);
          std::vector<NodeId> alpha;
          if (rec->directional && rec->infector) {
            const NodeId v = *rec->infector;
            if (active[v]) {
              for (NodeId w = 0; w < n; ++w) {
                if (label[w] == label[v]) alpha.push_back(w);
              }
            } else {
              alpha.push_back(v);
            }
          } else {
            alpha = brute_cover(g, label, u);
          }
          if (!std::count(alpha.begin(), alpha.end(), x)) in_all = false;
        }
        if (in_all || std::count(earliest.begin(), earliest.end(), x)) brute_primary.push_back(x);
      }
    }
    expect(primary == brute_primary);
    expect(std::binary_search(primary.begin(), primary.end(), sample.trace.source));

    auto inner = interior_candidates(g, primary, readout);
    std::vector<NodeId> interior, periphery;
    for (NodeId v : primary) {
      if (!std::count(earliest.begin(), earliest.end(), v)) interior.push_back(v);
    }
    if (!interior.empty()) {
      for (NodeId u : observers) {
        if (!readout.find(u)->time) continue;
        for (NodeId v : interior) {
          if (g.has_edge(u, v)) {
            periphery.push_back(u);
            break;
          }
        }
      }
      std::sort(periphery.begin(), periphery.end());
    }
    expect(inner.interior == interior && inner.periphery == periphery);
  }

  // Order parameter against per-q recomputation.
  for (int rep = 0; rep < 10; ++rep) {
    auto g = testing::random_graph(200, 300 + 20 * rep, 900 + rep);
    auto order = testing::shuffled_ids(200, rng);
    auto curve = order_parameter(g, order, per_removal_grid(200));
    for (std::size_t k = 0; k <= 200; ++k) {
      expect(curve.values[k] == static_cast<double>(testing::naive_lcc_after(g, order, k)) / 200.0);
    }
  }

  // Block-local RR leaves every other block's share of F unchanged.
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 100;
    auto g = testing::random_graph(n, 150 + 5 * rep, 1000 + rep);
    auto order = testing::shuffled_ids(n, rng);
    auto blocks = BlockPartition::uniform(n, 10 + static_cast<std::size_t>(rep % 3) * 5);
    auto naive_blocks = [&](const std::vector<NodeId>& seq) {
      std::vector<std::size_t> sums(blocks.size(), 0);
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (std::size_t j = blocks.begin(b) + 1; j <= blocks.end(b); ++j) sums[b] += testing::naive_lcc_after(g, seq, j);
      }
      return sums;
    };
    const std::size_t target = static_cast<std::size_t>(rep) % blocks.size();
    auto before = block_fitness(g, order, blocks);
    auto naive_before = naive_blocks(order);
    RRParams params;
    params.rounds = 5;
    rr_block(g, order, blocks.begin(target), blocks.end(target), params, rng);
    expect(is_permutation_of(order, n));
    auto after = block_fitness(g, order, blocks);
    auto naive_after = naive_blocks(order);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      expect(before[b] == static_cast<double>(naive_before[b]) / (n * n));
      if (b == target) {
        expect(naive_after[b] <= naive_before[b]);
      } else {
        expect(after[b] == before[b] && naive_after[b] == naive_before[b]);
      }
    }
  }
  verdict(6, mismatches == 0,
          std::to_string(checks - mismatches) + "/" + std::to_string(checks) +
              " exact matches (union-find, boundary, cover, V_c', O'', order parameter, per-block F')");
}

// ---------------------------------------------------------------------------
// 7: RR acceptance

void rr_acceptance() {
  std::size_t rounds = 0, accepted = 0, violations = 0;
  Rng rng(707);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 100;
    auto g = testing::random_graph(n, 180 + 10 * rep, 1100 + rep);
    auto exact = [&](const std::vector<NodeId>& seq) {
      std::size_t sum = 0;
      for (std::size_t j = 1; j <= n; ++j) sum += testing::naive_lcc_after(g, seq, j);
      return sum;
    };
    RRParams params;
    params.xi = rep % 2 ? XiMode::Product : XiMode::Sum;
    NodeSequence current{testing::shuffled_ids(n, rng), std::nullopt};
    std::size_t kept = exact(current.order);
    for (int r = 0; r < 50; ++r) {
      auto next = rr_round(g, current, params, rng);
      const std::size_t f = exact(next.order);
      ++rounds;
      if (!is_permutation_of(next.order, n) || f > kept) ++violations;
      if (next.order != current.order) {
        ++accepted;
        if (f >= kept) ++violations;
      }
      if (next.fitness && std::abs(next.fitness->f - static_cast<double>(f) / (n * n)) > 1e-12) ++violations;
      current = std::move(next);
      kept = f;
    }
  }
  verdict(7, violations == 0 && accepted > 0,
          std::to_string(rounds) + " rounds, " + std::to_string(accepted) + " accepted, " +
              std::to_string(violations) + " violations of the strict-improvement guard");
}

// ---------------------------------------------------------------------------
// 8: hub-removal threshold solver

void hub_solver() {
  double worst = 0.0;
  bool bracketed = true;
  for (double l : {2.2, 2.5, 2.8}) {
    for (double k : {1.0, 2.0, 3.0}) {
      auto root = hub_removal_threshold(l, k);
      if (!root) {
        bracketed = false;
        continue;
      }
      worst = std::max(worst, std::abs(hub_threshold_residual(l, k, *root)));
      const double lo = 1e-4, hi = 1.0 - 1e-4;
      double prev = hub_threshold_residual(l, k, lo), prev_q = lo;
      bool found = false;
      for (int i = 1; i <= 10000 && !found; ++i) {
        const double q = lo + (hi - lo) * i / 10000.0;
        const double r = hub_threshold_residual(l, k, q);
        if ((prev < 0) != (r < 0)) {
          found = true;
          bracketed = bracketed && *root >= prev_q - 1e-12 && *root <= q + 1e-12;
        }
        prev = r;
        prev_q = q;
      }
      bracketed = bracketed && found;
    }
  }
  verdict(8, worst < 1e-8 && bracketed,
          "max residual " + fmt(worst, 3) + " over 9 (l, k_min) pairs; roots inside the first sign change of a 1e4-point scan");
}

// ---------------------------------------------------------------------------
// 9: reproducibility through the CLI

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void reproducibility(const Settings& s) {
  if (s.cli.empty()) {
    verdict(9, false, "path to the pref CLI not given (--cli)");
    return;
  }
  const auto dir = std::filesystem::temp_directory_path() / "pref_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> outputs;
  std::vector<int> threads{1, 1, 4, 8};
  bool ran = true;
  for (std::size_t i = 0; i < threads.size(); ++i) {
    const auto out = dir / ("run" + std::to_string(i) + ".csv");
    std::filesystem::remove(out);
    const std::string cmd = "\"" + s.cli + "\" --seed 909 --threads " + std::to_string(threads[i]) +
                            " evaluate --gen-model er --nodes 2000 --edges 7000 --strategy pref --epochs 200"
                            " --q 0.1,0.25 --rd 0,0.5,1 --beta 0.3,0.7 --epsilon 0.1 --jordan rank"
                            " --samples 5000 --trials 40 -o \"" +
                            out.string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) ran = false;
    outputs.push_back(slurp(out));
  }
  bool identical = ran && !outputs[0].empty();
  for (const auto& o : outputs) identical = identical && o == outputs[0];
  const auto lines = std::count(outputs[0].begin(), outputs[0].end(), '\n');
  verdict(9, identical,
          std::string(identical ? "bitwise-identical" : "differing") + " evaluate CSVs (" + std::to_string(lines) +
              " lines) across two 1-thread runs and 4 and 8 threads");
  std::filesystem::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  Settings s;
  s.threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--cli", s.cli, "Path to the pref command-line tool");
  app.add_option("--trials", s.trials, "Trials per soundness cell");
  app.add_option("--stability-trials", s.stability_trials, "Trials per stability cell");
  app.add_option("--samples", s.samples, "Reverse walks per localization");
  app.add_option("--threads", s.threads, "Worker threads");
  app.add_option("--only", s.only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);
  auto wanted = [&](int id) { return s.only.empty() || std::count(s.only.begin(), s.only.end(), id); };

  try {
    SequenceCache cache;
    std::vector<LabeledGraph> er;
    if (wanted(1) || wanted(3) || wanted(4)) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        er.push_back(LabeledGraph::with_numeric_labels(er_graph(10000, 35000, seed)));
      }
    }
    auto sf = LabeledGraph::with_numeric_labels(sf_graph(1));
    auto star = LabeledGraph::with_numeric_labels(make_star(999));

    if (wanted(1) || wanted(4)) {
      std::vector<Network> nets;
      nets.push_back({"er", er[0], cache.get("er7-1", er[0].graph, 1)});
      nets.push_back({"sf", sf, cache.get("sf", sf.graph, 1)});
      nets.push_back({"star", star, cache.get("star", star.graph, 1)});
      soundness_and_direction(nets, s);
    }
    if (wanted(2)) er_threshold();
    if (wanted(3)) dismantling(cache, er);
    if (wanted(5)) stability({"sf", sf, cache.get("sf", sf.graph, 1)}, s);
    if (wanted(6)) oracles();
    if (wanted(7)) rr_acceptance();
    if (wanted(8)) hub_solver();
    if (wanted(9)) reproducibility(s);
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance run aborted: " << e.what() << std::endl;
    return 2;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
